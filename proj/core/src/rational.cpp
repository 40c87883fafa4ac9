#include "sqclp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sqclp {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number: " + std::string(whole));
  cpp_int value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("malformed number: " + std::string(whole));
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  Rational value;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    cpp_int num = parse_digits(rest.substr(0, slash), text);
    cpp_int den = parse_digits(rest.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    value = Rational(num, den);
  } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view frac = rest.substr(dot + 1);
    cpp_int whole = parse_digits(rest.substr(0, dot), text);
    cpp_int fraction = parse_digits(frac, text);
    cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac.size()));
    value = Rational(whole * scale + fraction, scale);
  } else {
    value = Rational(parse_digits(rest, text));
  }
  return negative ? Rational(-value) : value;
}

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

std::string format_rational(const Rational& value) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  // Only denominators of the form 2^a 5^b terminate.
  cpp_int rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  unsigned digits = std::max(twos, fives);
  cpp_int scale = boost::multiprecision::pow(cpp_int(10), digits);
  cpp_int scaled = num * (scale / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
  body.insert(body.size() - digits, ".");
  return negative ? "-" + body : body;
}

}  // namespace sqclp
