#include "linear.hpp"

#include "sqclp/terms.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace sqclp::linear {

Affine Affine::of_var(const std::string& v) {
  Affine a;
  a.coeffs.emplace(v, Rational(1));
  return a;
}

Affine Affine::of_const(Rational c) {
  Affine a;
  a.constant = std::move(c);
  return a;
}

Rational Affine::coeff(const std::string& v) const {
  auto it = coeffs.find(v);
  return it == coeffs.end() ? Rational(0) : it->second;
}

void Affine::add(const Affine& other, const Rational& factor) {
  if (factor == 0) return;
  for (const auto& [v, c] : other.coeffs) {
    Rational& slot = coeffs[v];
    slot += c * factor;
    if (slot == 0) coeffs.erase(v);
  }
  constant += other.constant * factor;
}

void Affine::scale(const Rational& factor) {
  if (factor == 0) {
    coeffs.clear();
    constant = 0;
    return;
  }
  for (auto& [v, c] : coeffs) c *= factor;
  constant *= factor;
}

void Affine::substitute(const std::string& v, const Affine& expr) {
  auto it = coeffs.find(v);
  if (it == coeffs.end()) return;
  Rational factor = it->second;
  coeffs.erase(it);
  add(expr, factor);
}

Rational Affine::evaluate(const std::map<std::string, Rational>& values) const {
  Rational out = constant;
  for (const auto& [v, c] : coeffs) {
    auto it = values.find(v);
    if (it != values.end()) out += c * it->second;
  }
  return out;
}

std::string Affine::key() const {
  std::string out;
  for (const auto& [v, c] : coeffs) out += format_rational(c) + "*" + v + "+";
  out += format_rational(constant);
  return out;
}

Affine EqualitySolution::resolve(const Affine& e) const {
  Affine out = e;
  for (const auto& [v, expr] : pivots) out.substitute(v, expr);
  return out;
}

Affine EqualitySolution::resolve_var(const std::string& v) const {
  auto it = pivots.find(v);
  return it == pivots.end() ? Affine::of_var(v) : it->second;
}

EqualitySolution solve_equalities(const std::vector<Affine>& rows) {
  EqualitySolution sol;
  for (const Affine& raw : rows) {
    Affine row = sol.resolve(raw);
    if (row.is_constant()) {
      if (row.constant != 0) {
        sol.consistent = false;
        return sol;
      }
      continue;
    }
    // Pivot on the lexicographically greatest variable so that smaller names stay free.
    std::string pivot = row.coeffs.begin()->first;
    for (const auto& [v, c] : row.coeffs)
      if (var_less(pivot, v)) pivot = v;
    Rational a = row.coeffs.at(pivot);
    row.coeffs.erase(pivot);
    row.scale(Rational(-1) / a);
    for (auto& [v, expr] : sol.pivots) expr.substitute(pivot, row);
    sol.pivots.emplace(pivot, std::move(row));
  }
  return sol;
}

namespace {

// Scales so the first coefficient has magnitude one; returns false if the constraint is
// trivially false and sets `trivial` when it is trivially true.
bool normalize(Inequality& q, bool& trivial) {
  trivial = false;
  if (q.expr.is_constant()) {
    bool holds = q.strict ? q.expr.constant < 0 : q.expr.constant <= 0;
    trivial = holds;
    return holds;
  }
  Rational lead = abs(q.expr.coeffs.begin()->second);
  q.expr.scale(Rational(1) / lead);
  return true;
}

struct Layer {
  std::string var;
  std::vector<Inequality> bounds;
};

}  // namespace

FeasibilityResult fourier_motzkin(const std::vector<Inequality>& system, std::size_t limit) {
  FeasibilityResult result;
  std::vector<Inequality> current;
  std::set<std::string> seen_keys;
  auto push = [&](std::vector<Inequality>& into, std::set<std::string>& keys, Inequality q) -> bool {
    bool trivial = false;
    if (!normalize(q, trivial)) return false;
    if (trivial) return true;
    std::string key = q.expr.key() + (q.strict ? "<" : "<=");
    if (keys.insert(key).second) into.push_back(std::move(q));
    return true;
  };

  std::set<std::string> all_vars;
  for (const Inequality& q : system) {
    for (const auto& [v, c] : q.expr.coeffs) all_vars.insert(v);
    if (!push(current, seen_keys, q)) {
      result.status = Feasibility::Infeasible;
      return result;
    }
  }

  std::vector<Layer> layers;
  for (;;) {
    std::set<std::string> vars;
    for (const Inequality& q : current)
      for (const auto& [v, c] : q.expr.coeffs) vars.insert(v);
    if (vars.empty()) break;

    // Cheapest variable first: fewest generated combinations.
    std::string pick;
    std::size_t best = SIZE_MAX;
    for (const std::string& v : vars) {
      std::size_t pos = 0, neg = 0;
      for (const Inequality& q : current) {
        Rational c = q.expr.coeff(v);
        if (c > 0) ++pos;
        else if (c < 0) ++neg;
      }
      std::size_t cost = pos * neg;
      if (cost < best) {
        best = cost;
        pick = v;
      }
    }

    Layer layer{pick, {}};
    std::vector<Inequality> upper, lower, rest;
    for (Inequality& q : current) {
      Rational c = q.expr.coeff(pick);
      if (c > 0) upper.push_back(q);
      else if (c < 0) lower.push_back(q);
      else rest.push_back(std::move(q));
    }
    layer.bounds.insert(layer.bounds.end(), upper.begin(), upper.end());
    layer.bounds.insert(layer.bounds.end(), lower.begin(), lower.end());

    std::vector<Inequality> next;
    std::set<std::string> keys;
    for (Inequality& q : rest) {
      if (!push(next, keys, std::move(q))) {
        result.status = Feasibility::Infeasible;
        return result;
      }
    }
    for (const Inequality& u : upper) {
      for (const Inequality& l : lower) {
        Rational cu = u.expr.coeff(pick);
        Rational cl = -l.expr.coeff(pick);
        Inequality combined;
        combined.expr = u.expr;
        combined.expr.scale(cl);
        combined.expr.add(l.expr, cu);
        combined.expr.coeffs.erase(pick);
        combined.strict = u.strict || l.strict;
        if (!push(next, keys, std::move(combined))) {
          result.status = Feasibility::Infeasible;
          return result;
        }
        if (next.size() > limit) {
          result.status = Feasibility::GaveUp;
          return result;
        }
      }
    }
    layers.push_back(std::move(layer));
    current = std::move(next);
  }

  // Back-substitution in reverse elimination order.
  std::map<std::string, Rational>& values = result.witness;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    std::optional<Rational> low, high;
    bool low_strict = false, high_strict = false;
    for (const Inequality& q : it->bounds) {
      Rational a = q.expr.coeff(it->var);
      Affine rest = q.expr;
      rest.coeffs.erase(it->var);
      Rational bound = -rest.evaluate(values) / a;
      if (a > 0) {
        if (!high || bound < *high || (bound == *high && q.strict)) {
          high_strict = (high && bound == *high) ? (high_strict || q.strict) : q.strict;
          high = bound;
        }
      } else {
        if (!low || bound > *low || (bound == *low && q.strict)) {
          low_strict = (low && bound == *low) ? (low_strict || q.strict) : q.strict;
          low = bound;
        }
      }
    }
    Rational value = 0;
    if (low && high) {
      if (!low_strict) value = *low;
      else if (!high_strict) value = *high;
      else value = (*low + *high) / 2;
    } else if (low) {
      value = low_strict ? *low + 1 : *low;
    } else if (high) {
      value = high_strict ? *high - 1 : *high;
    }
    values[it->var] = value;
  }
  for (const std::string& v : all_vars) values.try_emplace(v, Rational(0));
  return result;
}

}  // namespace sqclp::linear
