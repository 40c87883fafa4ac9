#pragma once

#include "sqclp/constraints.hpp"
#include "sqclp/program.hpp"
#include "sqclp/qualdom.hpp"
#include "sqclp/semantics.hpp"
#include "sqclp/terms.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sqclp {

struct GoalSolution {
  Substitution sigma;
  std::map<std::string, QualValue> mu;
  ConstraintStore store;
  friend bool operator==(const GoalSolution&, const GoalSolution&) = default;
};

std::string to_string(const GoalSolution& s);

struct SolveOptions {
  std::size_t depth_limit = 8;
  std::size_t universe_depth = 2;
  std::size_t max_solutions = 1000;
  std::optional<ConstraintStore> store_seed;
  // Per proof, μ is the best degree that proof gives; distinct proofs may report the same σ at
  // comparable degrees. best_only keeps just the maximal ones per σ and store.
  bool best_only = false;
  std::size_t max_steps = 0;  // search work budget; zero is unlimited
};

struct SolveResult {
  std::vector<GoalSolution> solutions;
  bool cutoff = false;   // the depth limit pruned some branch
  bool unknown = false;  // some branch was dropped on an undecided constraint
  bool truncated = false;  // max_solutions reached
  bool exhausted = false;  // max_steps reached
};

// Left-to-right proof search per goal atom; repeated (σ, μ, Π) triples are dropped.
SolveResult solve(const Program& prog, const Goal& goal, const SolveOptions& opts = {});

Tristate is_solution(const Program& prog, const Goal& goal, const GoalSolution& sol, std::size_t depth_limit = 8);

// Whether the ground solution is an instance of `general` with degrees below it.
Tristate subsumes(const Program& prog, const Goal& goal, const GoalSolution& general, const GoalSolution& ground);

// Exhaustive bottom-up prover for ground, constraint-free derivations whose defined atoms all
// have arguments in the universe. Independent of the goal-directed search.
class GroundOracle {
 public:
  GroundOracle(const Program& prog, TermUniverse universe, std::size_t max_height = 64);

  // Maximal derivable degrees of a ground atom. Atoms with arguments outside the universe get
  // one defined step on top of the table.
  std::vector<QualValue> degrees_of(const Atom& atom) const;
  bool derivable(const Atom& atom, const QualValue& degree) const;
  std::optional<ProofTree> proof(const Atom& atom, const QualValue& degree) const;

  // Ground defined atoms over the universe with at least one derivable degree.
  std::vector<Atom> atoms() const;
  std::size_t height() const;
  bool converged() const;
  const TermUniverse& universe() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

std::vector<GoalSolution> brute_ground_solutions(const Program& prog, const Goal& goal, const TermUniverse& universe);

}  // namespace sqclp
