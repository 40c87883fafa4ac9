#pragma once

#include "sqclp/constraints.hpp"
#include "sqclp/program.hpp"
#include "sqclp/proximity.hpp"
#include "sqclp/qualdom.hpp"
#include "sqclp/terms.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqclp {

// A ♯ d ⇐ Π
struct QcAtom {
  Atom atom;
  QualValue degree;
  ConstraintStore store;
  friend bool operator==(const QcAtom&, const QcAtom&) = default;
};

std::string to_string(const QcAtom& phi);

// Degree is not bottom and the store is satisfiable.
Tristate is_observable(const QualDomain& dom, const QcAtom& phi);

// φ entails φ′: some θ with A′ = Aθ, d′ ⊑ d and Π′ entailing Πθ.
Tristate qc_entails(const QualDomain& dom, const QcAtom& phi, const QcAtom& phi2);

// The entailment variant that also allows S-close atoms: S(A′, Aθ) = λ ≠ ⊥, d′ ⊑ λ, d′ ⊑ d.
// It breaks the entailment property of programs for non-transitive S; kept for that
// counterexample only.
Tristate proximity_entails(const ProximityRelation& rel, const QcAtom& phi, const QcAtom& phi2);

// Finite generator set; denotes the closure under qc_entails.
struct Interpretation {
  std::vector<QcAtom> generators;
  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

// Removes generators entailed by another one (keeping the earliest of mutually entailing ones).
Interpretation prune(const QualDomain& dom, std::vector<QcAtom> generators);
Interpretation interpretation_union(const QualDomain& dom, const Interpretation& a, const Interpretation& b);
// Only for ground generators: pairwise glb of degrees on equal atoms.
Interpretation interpretation_intersection(const QualDomain& dom, const Interpretation& a, const Interpretation& b);

Tristate valid_in(const Program& prog, const Interpretation& interp, const QcAtom& phi);

// Finite set of terms standing in for "all terms" when instantiating clauses.
class TermUniverse {
 public:
  struct Options {
    std::size_t depth = 2;
    std::size_t fresh_variables = 1;
    bool store_variables = true;
  };

  explicit TermUniverse(std::vector<Term> terms);
  // Terms over the program's constructors (declared, used, or proximity partners), store
  // variables and fresh variables, nested up to `depth`.
  static TermUniverse build(const Program& prog, const ConstraintStore& store, const Options& opts);
  static TermUniverse ground(const Program& prog, std::size_t depth);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool contains(const Term& t) const;

 private:
  std::vector<Term> terms_;
};

std::vector<QcAtom> immediate_consequence(const Program& prog, const Interpretation& interp, const Clause& clause,
                                          const std::string& target_pred, const ConstraintStore& store,
                                          const TermUniverse& universe);

Interpretation tp_step(const Program& prog, const Interpretation& interp, const ConstraintStore& store,
                       const TermUniverse& universe);

struct LfpResult {
  Interpretation model;
  std::vector<Interpretation> iterates;  // T_P↑1, T_P↑2, ...
  std::size_t iterations = 0;
  bool converged = false;
};

LfpResult tp_lfp(const Program& prog, const ConstraintStore& store, const TermUniverse& universe,
                 std::size_t max_iters);

Tristate is_prefixpoint(const Program& prog, const Interpretation& interp, const ConstraintStore& store,
                        const TermUniverse& universe);

enum class RuleTag : unsigned char { SQDA, SQEA, SQPA };
std::string to_string(RuleTag r);

struct ProofTree {
  QcAtom node;
  RuleTag rule = RuleTag::SQEA;
  std::string clause_id;  // SQDA only
  Substitution theta;     // SQDA only, over the clause's own variables
  std::vector<ProofTree> children;
  friend bool operator==(const ProofTree&, const ProofTree&) = default;
};

class MalformedProof : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws MalformedProof for structural problems; side conditions yield False or Unknown.
Tristate check_proof(const Program& prog, const ProofTree& tree);

struct ProofStats {
  std::size_t size = 0;
  std::size_t defined_steps = 0;
  friend bool operator==(const ProofStats&, const ProofStats&) = default;
};

ProofStats proof_stats(const ProofTree& tree);

struct DeriveResult {
  std::optional<ProofTree> proof;
  bool cutoff = false;   // some branch hit the depth limit
  bool unknown = false;  // some branch was abandoned on an undecided constraint
};

// Depth-bounded search for a proof of φ; depth counts nested defined steps.
DeriveResult derive(const Program& prog, const QcAtom& phi, std::size_t depth_limit);

}  // namespace sqclp
