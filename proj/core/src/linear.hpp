#pragma once

// Rational linear arithmetic: affine expressions, Gauss-Jordan elimination on equalities and
// Fourier-Motzkin elimination with strict-inequality flags.

#include "sqclp/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqclp::linear {

struct Affine {
  std::map<std::string, Rational> coeffs;  // zero coefficients are never stored
  Rational constant = 0;

  static Affine of_var(const std::string& v);
  static Affine of_const(Rational c);

  bool is_constant() const { return coeffs.empty(); }
  Rational coeff(const std::string& v) const;
  void add(const Affine& other, const Rational& factor = Rational(1));
  void scale(const Rational& factor);
  // Replaces variable v by expr.
  void substitute(const std::string& v, const Affine& expr);
  Rational evaluate(const std::map<std::string, Rational>& values) const;
  std::string key() const;  // canonical text, used to group equal expressions

  friend bool operator==(const Affine&, const Affine&) = default;
};

// expr < 0 when strict, expr <= 0 otherwise.
struct Inequality {
  Affine expr;
  bool strict = false;
};

enum class Feasibility { Feasible, Infeasible, GaveUp };

// Reduced row-echelon solution of a set of equalities expr = 0: each pivot variable is
// expressed through non-pivot variables.
struct EqualitySolution {
  bool consistent = true;
  std::map<std::string, Affine> pivots;

  Affine resolve(const Affine& e) const;
  Affine resolve_var(const std::string& v) const;
};

EqualitySolution solve_equalities(const std::vector<Affine>& rows);

struct FeasibilityResult {
  Feasibility status = Feasibility::Feasible;
  std::map<std::string, Rational> witness;  // values for every variable mentioned
};

// Decides feasibility of a conjunction of inequalities over the rationals and, when feasible,
// returns a satisfying assignment for every variable occurring in them.
FeasibilityResult fourier_motzkin(const std::vector<Inequality>& system, std::size_t limit = 20000);

}  // namespace sqclp::linear
