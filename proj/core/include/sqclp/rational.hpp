#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sqclp {

using Rational = boost::multiprecision::cpp_rational;

// Accepts `12`, `-3.25`, `0.0`, `7/3`. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Terminating decimals print as decimals ("0.75", "3"); others as "p/q".
std::string format_rational(const Rational& value);

bool is_integer(const Rational& value);

}  // namespace sqclp
