#include "gen.hpp"

namespace sqclp::testkit {

Term Gen::term(std::size_t depth, const std::vector<std::string>& vars) {
  if (depth == 0 || coin(0.35)) {
    std::size_t r = below(10);
    if (r < 5 && !vars.empty()) return Term::variable(pick(vars));
    if (r < 7) return small_number();
    return Term::apply(r < 9 ? "a" : "b");
  }
  switch (below(3)) {
    case 0: return Term::apply("g", {term(depth - 1, vars)});
    case 1: return Term::apply("c", {term(depth - 1, vars), term(depth - 1, vars)});
    default: return Term::apply("d", {term(depth - 1, vars), term(depth - 1, vars)});
  }
}

Substitution Gen::substitution(const std::vector<std::string>& vars, std::size_t depth) {
  Substitution s;
  for (const std::string& v : vars)
    if (coin(0.5)) s.bind(v, term(depth, vars));
  return s;
}

Substitution Gen::numeric_substitution(const std::vector<std::string>& domain, const std::vector<std::string>& range) {
  Substitution s;
  for (const std::string& v : domain) {
    if (!coin(0.5)) continue;
    if (coin(0.5) && !range.empty()) s.bind(v, Term::variable(pick(range)));
    else s.bind(v, small_number());
  }
  return s;
}

Atom Gen::linear_atom(const std::vector<std::string>& vars) {
  auto operand = [&] { return coin(0.75) ? Term::variable(pick(vars)) : small_number(); };
  switch (below(7)) {
    case 0: return Atom::primitive(Primitive::Add, {operand(), operand(), operand()});
    case 1: return Atom::primitive(Primitive::Sub, {operand(), operand(), operand()});
    case 2: return Atom::primitive(Primitive::Mul, {small_number(), operand(), operand()});
    case 3: return Atom::primitive(Primitive::Lt, {operand(), operand()});
    case 4: return Atom::primitive(Primitive::Le, {operand(), operand()});
    case 5: return Atom::primitive(Primitive::Ge, {operand(), operand()});
    default: return Atom::equation(Term::variable(pick(vars)), operand());
  }
}

std::vector<Atom> Gen::linear_atoms(const std::vector<std::string>& vars, std::size_t count) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(linear_atom(vars));
  return out;
}

std::vector<QualValue> Gen::grid(const QualDomain& dom) {
  using K = QualDomain::Kind;
  auto certainties = [] {
    std::vector<QualValue> v;
    for (auto [p, q] : std::vector<std::pair<long, long>>{{0, 1}, {1, 10}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}, {9, 10}, {99, 100}, {1, 1}})
      v.push_back(QualValue::certainty(Rational(p, q)));
    return v;
  };
  auto costs = [](bool natural) {
    std::vector<QualValue> v;
    std::vector<Rational> xs = natural ? std::vector<Rational>{0, 1, 2, 3, 4, 5, 7, 10, 20}
                                       : std::vector<Rational>{0, Rational(1, 2), 1, 2, 3, Rational(7, 2), 5, 10, 100};
    for (const Rational& x : xs) v.push_back(QualValue::cost(x));
    v.push_back(QualValue::infinite_cost());
    return v;
  };
  switch (dom.kind()) {
    case K::Bool: {
      std::vector<QualValue> v;
      for (int i = 0; i < 10; ++i) v.push_back(QualValue::truth(i % 2 == 1));
      return v;
    }
    case K::Unit:
    case K::UnitMin: return certainties();
    case K::Weight:
    case K::WeightMax: return costs(false);
    case K::WeightNat:
    case K::WeightNatMax: return costs(true);
    case K::Cartesian:
    case K::Strict: {
      std::vector<QualValue> left = grid(dom.first()), right = grid(dom.second());
      std::vector<QualValue> v{dom.bottom(), dom.top()};
      while (v.size() < 10) {
        QualValue l = pick(left), r = pick(right);
        v.push_back(dom.kind() == K::Strict ? dom.strict_pair(l, r) : QualValue::pair(l, r));
      }
      return v;
    }
  }
  return {};
}

}  // namespace sqclp::testkit
