#pragma once

#include "sqclp/terms.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sqclp {

enum class Tristate : unsigned char { False, True, Unknown };

std::string to_string(Tristate t);
inline Tristate from_bool(bool b) { return b ? Tristate::True : Tristate::False; }
Tristate tri_and(Tristate a, Tristate b);

enum class ConstraintDomainKind : unsigned char { Herbrand, Real };

// Ground substitution.
using Valuation = Substitution;

// Truth of a ground primitive atom in the real domain; false whenever an argument is not a number.
bool eval_primitive(const Atom& atom);

// Truth of a ground equation or primitive atom.
bool eval_ground(const Atom& atom);

// Whether η satisfies π. Free variables of π outside its existential prefix must be bound to
// ground terms by η. Throws std::domain_error when the existential part falls outside the
// decidable fragment.
bool satisfies(const Valuation& eta, const Constraint& pi);
bool satisfies(const Valuation& eta, const std::vector<Atom>& atoms);

// Finite conjunction of atomic constraints, normalized once at construction.
class ConstraintStore {
 public:
  ConstraintStore();
  explicit ConstraintStore(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  ConstraintStore with(const std::vector<Atom>& more) const;
  ConstraintStore substituted(const Substitution& sigma) const;

  std::set<std::string> variables() const;
  // Variables forced to denote numbers by some primitive atom.
  bool is_numeric(const std::string& var) const;

  Tristate satisfiable() const;
  Tristate entails(const Atom& atom) const;
  Tristate entails(const Constraint& pi) const;
  Tristate entails_all(const std::vector<Atom>& atoms) const;

  // Fully expanded representative of t's equivalence class: store bindings applied, numeric
  // variables replaced by their forced value or by the least-ranked equal variable.
  Term normal_form(const Term& t) const;
  // Variables replaced by least-ranked members of their classes; shape otherwise preserved.
  Term canonical_form(const Term& t) const;

  // A satisfying valuation of every store variable plus `extra` variables, when the store is
  // decided satisfiable.
  std::optional<Valuation> witness(const std::set<std::string>& extra = {}) const;
  // A valuation satisfying the store but falsifying `atom`, verified by evaluation.
  std::optional<Valuation> countermodel(const Atom& atom) const;

  friend bool operator==(const ConstraintStore& a, const ConstraintStore& b) { return a.atoms_ == b.atoms_; }

  struct Normalized;

 private:
  std::vector<Atom> atoms_;
  std::shared_ptr<const Normalized> norm_;
};

std::string to_string(const ConstraintStore& store);

Tristate pi_equiv(const ConstraintStore& store, const Term& t, const Term& s);
Term canonical_form(const ConstraintStore& store, const Term& t);
Tristate entails(const ConstraintStore& store, const Atom& atom);
Tristate entails(const ConstraintStore& store, const Constraint& pi);
Tristate satisfiable(const ConstraintStore& store);

// Checks entails(Πσ, πσ) given entails(Π, π); returns false on a violation of the
// substitution property.
bool subst_entailment_check(const ConstraintStore& store, const Constraint& pi, const Substitution& sigma);

}  // namespace sqclp
