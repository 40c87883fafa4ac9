#pragma once

// Random terms, substitutions, linear stores and qualification values for property tests.

#include "sqclp/constraints.hpp"
#include "sqclp/qualdom.hpp"
#include "sqclp/terms.hpp"

#include <random>
#include <string>
#include <vector>

namespace sqclp::testkit {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

  // Terms over c/2, d/2, g/1, a/0, b/0, small integers and the given variables.
  Term term(std::size_t depth, const std::vector<std::string>& vars);
  Substitution substitution(const std::vector<std::string>& vars, std::size_t depth);
  // Substitution into numbers and the given variables only, keeping stores linear.
  Substitution numeric_substitution(const std::vector<std::string>& domain, const std::vector<std::string>& range);

  // Satisfiable-or-not conjunction of linear atoms over the given numeric variables.
  std::vector<Atom> linear_atoms(const std::vector<std::string>& vars, std::size_t count);
  Atom linear_atom(const std::vector<std::string>& vars);

  // Ten values from the carrier, bottom and top included.
  std::vector<QualValue> grid(const QualDomain& dom);

 private:
  Term small_number() { return Term::number(Rational(static_cast<long>(below(7)))); }
  std::mt19937_64 rng_;
};

}  // namespace sqclp::testkit
