#pragma once

// Depth-bounded proof search over the derivation rules. Used by derive (fixed atom, fixed
// store) and by goal solving (goal variables instantiable, primitive atoms added to the store).

#include "sqclp/program.hpp"
#include "sqclp/semantics.hpp"

#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace sqclp::search {

struct Query {
  std::vector<Atom> atoms;
  std::vector<Threshold> thresholds;  // per atom
  std::optional<QualValue> target;    // every atom must reach this degree
  std::set<std::string> bindable;     // query variables the search may instantiate
  ConstraintStore store;
  bool grow_store = false;            // primitive atoms with open variables join the store
  // A link between two open variables may also be split into proximate constructor pairs, as
  // long as the answer bindings stay within this nesting depth. Zero keeps plain equality.
  std::size_t answer_depth = 0;
  bool want_proofs = true;  // otherwise answers carry root degrees only
  std::size_t max_steps = 0;  // clause tries plus link closings; zero is unlimited
};

struct Answer {
  Substitution sigma;             // over the bindable query variables
  std::vector<QualValue> degrees;  // one per atom; the best this proof gives
  std::vector<ProofTree> proofs;   // one per atom when the query wants them
  ConstraintStore store;
};

struct Report {
  bool cutoff = false;
  bool unknown = false;
  bool exhausted = false;  // max_steps reached; the search stopped early
};

// Calls on_answer for each proof found; the search stops when it returns false.
Report run(const Program& prog, const Query& query, std::size_t depth_limit,
           const std::function<bool(const Answer&)>& on_answer);

}  // namespace sqclp::search
