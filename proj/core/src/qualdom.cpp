#include "sqclp/qualdom.hpp"

#include <algorithm>
#include <cctype>

namespace sqclp {

QualValue QualValue::pair(QualValue left, QualValue right) {
  return QualValue(Pair{std::make_shared<const QualValue>(std::move(left)),
                        std::make_shared<const QualValue>(std::move(right))});
}

std::string to_string(const QualValue& v) {
  if (v.is_truth()) return v.truth_value() ? "true" : "false";
  if (v.is_certainty()) return format_rational(v.certainty_value());
  if (v.is_cost()) return v.cost_value().infinite ? "inf" : format_rational(v.cost_value().value);
  return "(" + to_string(v.left()) + "," + to_string(v.right()) + ")";
}

std::string to_string(const Threshold& w) { return w.is_any() ? "?" : to_string(*w.value); }

QualDomain::QualDomain(Kind kind, QualDomain d1, QualDomain d2)
    : kind_(kind), parts_(std::make_shared<const std::pair<QualDomain, QualDomain>>(std::move(d1), std::move(d2))) {}

QualDomain make_product(QualDomain d1, QualDomain d2, bool strict) {
  return QualDomain(strict ? QualDomain::Kind::Strict : QualDomain::Kind::Cartesian, std::move(d1), std::move(d2));
}

const QualDomain& QualDomain::first() const {
  if (!parts_) throw std::logic_error("not a product domain");
  return parts_->first;
}

const QualDomain& QualDomain::second() const {
  if (!parts_) throw std::logic_error("not a product domain");
  return parts_->second;
}

bool operator==(const QualDomain& a, const QualDomain& b) {
  if (a.kind_ != b.kind_) return false;
  if (!a.is_product()) return true;
  return a.first() == b.first() && a.second() == b.second();
}

std::string QualDomain::name() const {
  switch (kind_) {
    case Kind::Bool: return "B";
    case Kind::Unit: return "U";
    case Kind::UnitMin: return "U'";
    case Kind::Weight: return "W";
    case Kind::WeightMax: return "W'";
    case Kind::WeightNat: return "Wd";
    case Kind::WeightNatMax: return "Wd'";
    case Kind::Cartesian: return "(" + first().name() + "*" + second().name() + ")";
    case Kind::Strict: return "(" + first().name() + "x" + second().name() + ")";
  }
  return "?";
}

namespace {

bool is_natural_weight(QualDomain::Kind k) {
  return k == QualDomain::Kind::WeightNat || k == QualDomain::Kind::WeightNatMax;
}

// Cost order is reversed: larger cost is lower in the lattice.
bool cost_leq(const QualValue::Cost& d, const QualValue::Cost& e) {
  if (d.infinite) return true;
  if (e.infinite) return false;
  return d.value >= e.value;
}

void require(bool ok, const QualDomain& dom, const QualValue& v) {
  if (!ok) throw CarrierError("value " + to_string(v) + " is not in domain " + dom.name());
}

}  // namespace

QualValue QualDomain::bottom() const {
  switch (kind_) {
    case Kind::Bool: return QualValue::truth(false);
    case Kind::Unit:
    case Kind::UnitMin: return QualValue::certainty(0);
    case Kind::Cartesian:
    case Kind::Strict: return QualValue::pair(first().bottom(), second().bottom());
    default: return QualValue::infinite_cost();
  }
}

QualValue QualDomain::top() const {
  switch (kind_) {
    case Kind::Bool: return QualValue::truth(true);
    case Kind::Unit:
    case Kind::UnitMin: return QualValue::certainty(1);
    case Kind::Cartesian:
    case Kind::Strict: return QualValue::pair(first().top(), second().top());
    default: return QualValue::cost(0);
  }
}

bool QualDomain::contains(const QualValue& v) const {
  switch (kind_) {
    case Kind::Bool: return v.is_truth();
    case Kind::Unit:
    case Kind::UnitMin: {
      if (!v.is_certainty()) return false;
      // sign and numerator tests avoid building temporary rationals on this hot path
      const Rational& q = v.certainty_value();
      return q.sign() >= 0 && numerator(q) <= denominator(q);
    }
    case Kind::Cartesian:
      return v.is_pair() && first().contains(v.left()) && second().contains(v.right());
    case Kind::Strict: {
      if (!v.is_pair() || !first().contains(v.left()) || !second().contains(v.right())) return false;
      return first().is_bottom(v.left()) == second().is_bottom(v.right());
    }
    default: {
      if (!v.is_cost()) return false;
      const auto& c = v.cost_value();
      if (c.infinite) return true;
      if (c.value.sign() < 0) return false;
      return !is_natural_weight(kind_) || is_integer(c.value);
    }
  }
}

bool QualDomain::leq(const QualValue& d, const QualValue& e) const {
  require(contains(d), *this, d);
  require(contains(e), *this, e);
  switch (kind_) {
    case Kind::Bool: return !d.truth_value() || e.truth_value();
    case Kind::Unit:
    case Kind::UnitMin: return d.certainty_value() <= e.certainty_value();
    case Kind::Cartesian:
    case Kind::Strict: return first().leq(d.left(), e.left()) && second().leq(d.right(), e.right());
    default: return cost_leq(d.cost_value(), e.cost_value());
  }
}

QualValue QualDomain::strict_pair(QualValue left, QualValue right) const {
  if (kind_ == Kind::Strict && (first().is_bottom(left) || second().is_bottom(right))) return bottom();
  return QualValue::pair(std::move(left), std::move(right));
}

QualValue QualDomain::glb(const QualValue& d, const QualValue& e) const {
  require(contains(d), *this, d);
  require(contains(e), *this, e);
  switch (kind_) {
    case Kind::Bool: return QualValue::truth(d.truth_value() && e.truth_value());
    case Kind::Unit:
    case Kind::UnitMin: return QualValue::certainty(std::min(d.certainty_value(), e.certainty_value()));
    case Kind::Cartesian:
    case Kind::Strict:
      return strict_pair(first().glb(d.left(), e.left()), second().glb(d.right(), e.right()));
    default: return cost_leq(d.cost_value(), e.cost_value()) ? d : e;
  }
}

QualValue QualDomain::lub(const QualValue& d, const QualValue& e) const {
  require(contains(d), *this, d);
  require(contains(e), *this, e);
  switch (kind_) {
    case Kind::Bool: return QualValue::truth(d.truth_value() || e.truth_value());
    case Kind::Unit:
    case Kind::UnitMin: return QualValue::certainty(std::max(d.certainty_value(), e.certainty_value()));
    case Kind::Cartesian:
    case Kind::Strict:
      return QualValue::pair(first().lub(d.left(), e.left()), second().lub(d.right(), e.right()));
    default: return cost_leq(d.cost_value(), e.cost_value()) ? e : d;
  }
}

QualValue QualDomain::attenuate(const QualValue& d, const QualValue& e) const {
  require(contains(d), *this, d);
  require(contains(e), *this, e);
  switch (kind_) {
    case Kind::Bool: return QualValue::truth(d.truth_value() && e.truth_value());
    case Kind::Unit: return QualValue::certainty(d.certainty_value() * e.certainty_value());
    case Kind::UnitMin: return QualValue::certainty(std::min(d.certainty_value(), e.certainty_value()));
    case Kind::Weight:
    case Kind::WeightNat: {
      const auto& a = d.cost_value();
      const auto& b = e.cost_value();
      if (a.infinite || b.infinite) return QualValue::infinite_cost();
      return QualValue::cost(a.value + b.value);
    }
    case Kind::WeightMax:
    case Kind::WeightNatMax: return cost_leq(d.cost_value(), e.cost_value()) ? d : e;
    case Kind::Cartesian:
    case Kind::Strict:
      return strict_pair(first().attenuate(d.left(), e.left()), second().attenuate(d.right(), e.right()));
  }
  return bottom();
}

QualValue QualDomain::infimum(const std::vector<QualValue>& vs) const {
  QualValue out = top();
  for (const auto& v : vs) out = glb(out, v);
  return out;
}

bool QualDomain::threshold_ok(const QualValue& e, const Threshold& w) const {
  return w.is_any() || leq(*w.value, e);
}

QualValue interpret_literal(const QualDomain& dom, const QualLiteral& lit) {
  using K = QualLiteral::Kind;
  auto fail = [&](const std::string& why) -> QualValue {
    throw CarrierError("literal does not fit domain " + dom.name() + ": " + why);
  };
  QualValue out = QualValue::truth(false);
  switch (dom.kind()) {
    case QualDomain::Kind::Bool:
      if (lit.kind != K::Truth) return fail("expected true/false");
      out = QualValue::truth(lit.truth);
      break;
    case QualDomain::Kind::Unit:
    case QualDomain::Kind::UnitMin:
      if (lit.kind != K::Number) return fail("expected a number in [0,1]");
      out = QualValue::certainty(lit.number);
      break;
    case QualDomain::Kind::Cartesian:
    case QualDomain::Kind::Strict:
      if (lit.kind != K::Pair || lit.parts.size() != 2) return fail("expected a pair");
      out = QualValue::pair(interpret_literal(dom.first(), lit.parts[0]),
                            interpret_literal(dom.second(), lit.parts[1]));
      break;
    default:
      if (lit.kind == K::Infinity) out = QualValue::infinite_cost();
      else if (lit.kind == K::Number) out = QualValue::cost(lit.number);
      else return fail("expected a cost or inf");
  }
  if (!dom.contains(out)) return fail(to_string(out) + " is outside the carrier");
  return out;
}

namespace {

struct LiteralReader {
  const std::string& text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail() const {
    throw std::invalid_argument("malformed qualification literal: " + text);
  }
  QualLiteral read() {
    skip();
    if (pos >= text.size()) fail();
    QualLiteral lit;
    if (text[pos] == '(') {
      ++pos;
      lit.kind = QualLiteral::Kind::Pair;
      lit.parts.push_back(read());
      skip();
      if (pos >= text.size() || text[pos] != ',') fail();
      ++pos;
      lit.parts.push_back(read());
      skip();
      if (pos >= text.size() || text[pos] != ')') fail();
      ++pos;
      return lit;
    }
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                                 text[pos] == '/' || text[pos] == '-' || text[pos] == '+'))
      ++pos;
    std::string word = text.substr(start, pos - start);
    if (word == "true" || word == "false") {
      lit.kind = QualLiteral::Kind::Truth;
      lit.truth = word == "true";
    } else if (word == "inf") {
      lit.kind = QualLiteral::Kind::Infinity;
    } else {
      lit.kind = QualLiteral::Kind::Number;
      try {
        lit.number = parse_rational(word);
      } catch (const std::invalid_argument&) {
        fail();
      }
    }
    return lit;
  }
};

}  // namespace

QualLiteral parse_qual_literal(const std::string& text) {
  LiteralReader reader{text};
  QualLiteral lit = reader.read();
  reader.skip();
  if (reader.pos != text.size()) reader.fail();
  return lit;
}

QualValue parse_qual_value(const QualDomain& dom, const std::string& text) {
  return interpret_literal(dom, parse_qual_literal(text));
}

namespace {

struct DomainReader {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail() const { throw std::invalid_argument("malformed domain: " + text); }
  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(const std::string& s) {
    if (text.compare(pos, s.size(), s) == 0) {
      pos += s.size();
      return true;
    }
    return false;
  }
  bool eat_prime() { return eat("'") || eat("′"); }

  QualDomain atom() {
    skip();
    if (eat("(")) {
      QualDomain d = expr();
      skip();
      if (!eat(")")) fail();
      return d;
    }
    if (eat("B")) return QualDomain::boolean();
    if (eat("U")) return eat_prime() ? QualDomain::certainty_min() : QualDomain::certainty();
    if (eat("W")) {
      bool prime = eat_prime();
      bool nat = eat("_d") || eat("d");
      prime = eat_prime() || prime;
      if (nat) return prime ? QualDomain::weight_nat_max() : QualDomain::weight_nat();
      return prime ? QualDomain::weight_max() : QualDomain::weight();
    }
    fail();
  }
  QualDomain expr() {
    QualDomain d = atom();
    for (;;) {
      skip();
      if (eat("x") || eat("⊗")) d = make_product(d, atom(), true);
      else if (eat("*") || eat("×")) d = make_product(d, atom(), false);
      else return d;
    }
  }
};

}  // namespace

QualDomain parse_domain(const std::string& text) {
  DomainReader reader{text};
  QualDomain d = reader.expr();
  reader.skip();
  if (reader.pos != text.size()) reader.fail();
  return d;
}

bool is_stable(const QualDomain& dom, const std::vector<std::pair<QualValue, QualValue>>& sample) {
  if (!dom.is_product()) return true;
  for (const auto& [d, e] : sample) {
    if (dom.is_bottom(d) || dom.is_bottom(e)) continue;
    if (dom.is_bottom(dom.attenuate(d, e))) return false;
  }
  return true;
}

bool expressible_in_herbrand(const QualDomain& dom) {
  if (dom.kind() == QualDomain::Kind::Bool) return true;
  if (dom.kind() == QualDomain::Kind::Strict)
    return expressible_in_herbrand(dom.first()) && expressible_in_herbrand(dom.second());
  return false;
}

bool expressible_in_real(const QualDomain& dom) {
  if (dom.kind() == QualDomain::Kind::Cartesian) return false;
  if (dom.kind() == QualDomain::Kind::Strict)
    return expressible_in_real(dom.first()) && expressible_in_real(dom.second());
  return true;
}

Term embed_value(const QualDomain& dom, const QualValue& v) {
  if (!dom.contains(v) || dom.is_bottom(v)) throw CarrierError("no embedding for " + to_string(v));
  switch (dom.kind()) {
    case QualDomain::Kind::Bool: return Term::apply("true");
    case QualDomain::Kind::Unit:
    case QualDomain::Kind::UnitMin: return Term::number(v.certainty_value());
    case QualDomain::Kind::Strict:
      return make_pair(embed_value(dom.first(), v.left()), embed_value(dom.second(), v.right()));
    case QualDomain::Kind::Cartesian: throw CarrierError("cartesian products have no constraint encoding");
    default: return Term::number(v.cost_value().value);
  }
}

namespace {

Term var(const std::string& name) { return Term::variable(name); }
Term num(int n) { return Term::number(Rational(n)); }

void append(Constraint& into, Constraint part) {
  into.existential.insert(into.existential.end(), part.existential.begin(), part.existential.end());
  into.atoms.insert(into.atoms.end(), part.atoms.begin(), part.atoms.end());
  into.integral.insert(into.integral.end(), part.integral.begin(), part.integral.end());
}

// Existential names are derived from the first argument so that nested product encodings
// never collide with each other or with the caller's variables.
std::string fresh(const std::string& base, const std::string& suffix) { return base + "_" + suffix; }

}  // namespace

Constraint encode_qval(const QualDomain& dom, const std::string& x) {
  Constraint c;
  const Term X = var(x);
  switch (dom.kind()) {
    case QualDomain::Kind::Bool:
      c.atoms.push_back(Atom::equation(X, Term::apply("true")));
      break;
    case QualDomain::Kind::Unit:
    case QualDomain::Kind::UnitMin:
      c.atoms.push_back(Atom::primitive(Primitive::Lt, {num(0), X}));
      c.atoms.push_back(Atom::primitive(Primitive::Le, {X, num(1)}));
      break;
    case QualDomain::Kind::Strict: {
      std::string l = fresh(x, "l"), r = fresh(x, "r");
      c.existential = {l, r};
      c.atoms.push_back(Atom::equation(X, make_pair(var(l), var(r))));
      append(c, encode_qval(dom.first(), l));
      append(c, encode_qval(dom.second(), r));
      break;
    }
    case QualDomain::Kind::Cartesian: throw CarrierError("cartesian products have no constraint encoding");
    default:
      c.atoms.push_back(Atom::primitive(Primitive::Ge, {X, num(0)}));
      if (is_natural_weight(dom.kind())) c.integral.push_back(x);
  }
  return c;
}

Constraint encode_qbound(const QualDomain& dom, const std::string& x, const std::string& y,
                         const std::string& z) {
  Constraint c;
  const Term X = var(x), Y = var(y), Z = var(z);
  switch (dom.kind()) {
    case QualDomain::Kind::Bool: break;  // every non-bottom value is true
    case QualDomain::Kind::Unit: {
      std::string prod = fresh(x, "m");
      c.existential = {prod};
      c.atoms.push_back(Atom::primitive(Primitive::Mul, {Y, Z, var(prod)}));
      c.atoms.push_back(Atom::primitive(Primitive::Le, {X, var(prod)}));
      break;
    }
    case QualDomain::Kind::UnitMin:
      c.atoms.push_back(Atom::primitive(Primitive::Le, {X, Y}));
      c.atoms.push_back(Atom::primitive(Primitive::Le, {X, Z}));
      break;
    case QualDomain::Kind::Weight:
    case QualDomain::Kind::WeightNat: {
      std::string sum = fresh(x, "s");
      c.existential = {sum};
      c.atoms.push_back(Atom::primitive(Primitive::Add, {Y, Z, var(sum)}));
      c.atoms.push_back(Atom::primitive(Primitive::Ge, {X, var(sum)}));
      break;
    }
    case QualDomain::Kind::WeightMax:
    case QualDomain::Kind::WeightNatMax:
      c.atoms.push_back(Atom::primitive(Primitive::Ge, {X, Y}));
      c.atoms.push_back(Atom::primitive(Primitive::Ge, {X, Z}));
      break;
    case QualDomain::Kind::Strict: {
      std::string xl = fresh(x, "l"), xr = fresh(x, "r");
      std::string yl = fresh(y, "l"), yr = fresh(y, "r");
      std::string zl = fresh(z, "l"), zr = fresh(z, "r");
      c.existential = {xl, xr, yl, yr, zl, zr};
      c.atoms.push_back(Atom::equation(X, make_pair(var(xl), var(xr))));
      c.atoms.push_back(Atom::equation(Y, make_pair(var(yl), var(yr))));
      c.atoms.push_back(Atom::equation(Z, make_pair(var(zl), var(zr))));
      append(c, encode_qbound(dom.first(), xl, yl, zl));
      append(c, encode_qbound(dom.second(), xr, yr, zr));
      break;
    }
    case QualDomain::Kind::Cartesian: throw CarrierError("cartesian products have no constraint encoding");
  }
  return c;
}

}  // namespace sqclp
