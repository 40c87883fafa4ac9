#pragma once

// JSON forms of proofs, qc-atoms, solutions and models. Terms, atoms and degrees travel as
// strings in program syntax so values stay exact.
//
//   qc-atom   {"atom": "p(X)", "degree": "0.8", "store": ["cp_>(X, 1)"]}
//   proof     {"node": <qc-atom>, "rule": "SQDA", "clause": "R2", "theta": {"X": "c(Y)"},
//              "children": [<proof>...]}      children may omit "store" to inherit it
//   solution  {"sigma": {"Z": "c(X)"}, "mu": {"W": "0.8"}, "store": [...]}

#include "sqclp/constraints.hpp"
#include "sqclp/engine.hpp"
#include "sqclp/qualdom.hpp"
#include "sqclp/semantics.hpp"

#include <string>
#include <vector>

namespace sqclp {

// Parse failures throw std::invalid_argument.
ConstraintStore store_from_json(const std::string& text);
std::string store_to_json(const ConstraintStore& store);

QcAtom qcatom_from_json(const std::string& text, const QualDomain& dom);
std::string qcatom_to_json(const QcAtom& phi);

ProofTree proof_from_json(const std::string& text, const QualDomain& dom);
std::string proof_to_json(const ProofTree& tree);

GoalSolution solution_from_json(const std::string& text, const QualDomain& dom);
std::string solution_to_json(const GoalSolution& sol);
std::string solutions_to_json(const SolveResult& res);

std::string interpretation_to_json(const Interpretation& interp);
std::string model_to_json(const LfpResult& lfp);

}  // namespace sqclp
