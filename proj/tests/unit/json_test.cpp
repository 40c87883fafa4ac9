#include "corpus.hpp"

#include "sqclp/json_io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace sqclp;

namespace {

std::string data(const std::string& name) { return testkit::read_text(std::string(SQCLP_DATA_DIR) + "/" + name); }

const QualDomain kU = QualDomain::certainty();

}  // namespace

TEST(JsonStores, RoundTrip) {
  ConstraintStore store(parse_constraints("cp_>(X, 1.0), op_+(A, A, X), Z == c(X, [a,b])"));
  EXPECT_EQ(store_from_json(store_to_json(store)), store);
  EXPECT_EQ(store_from_json("[]"), ConstraintStore());
  EXPECT_THROW(store_from_json("{\"not\": \"a list\"}"), std::invalid_argument);
}

TEST(JsonQcAtoms, RoundTripKeepsExactDegrees) {
  QualDomain uw = parse_domain("UxW");
  QcAtom phi{parse_atom("goodWork(king_liar)"),
             QualValue::pair(QualValue::certainty(Rational(2, 3)), QualValue::cost(Rational(7, 2))), ConstraintStore()};
  EXPECT_EQ(qcatom_from_json(qcatom_to_json(phi), uw), phi);
  EXPECT_THROW(qcatom_from_json("{\"atom\": \"p(\", \"degree\": \"1\"}", kU), std::invalid_argument);
  EXPECT_THROW(qcatom_from_json("{\"atom\": \"p\", \"degree\": \"2\"}", kU), std::invalid_argument);
}

TEST(JsonProofs, RunningProofRoundTrip) {
  ProofTree tree = proof_from_json(data("running_proof.json"), kU);
  ASSERT_EQ(tree.children.size(), 3u);
  // children inherit the root store
  EXPECT_EQ(tree.children[0].node.store, tree.node.store);
  EXPECT_EQ(tree.clause_id, "R2");
  EXPECT_EQ(proof_from_json(proof_to_json(tree), kU), tree);
}

TEST(JsonSolutions, RoundTripAndResultShape) {
  Program p = parse_program(data("library.sqclp"));
  Goal g = parse_goal("goodWork(X)#W", p.qdom);
  SolveResult res = solve(p, g);
  ASSERT_FALSE(res.solutions.empty());
  for (const GoalSolution& s : res.solutions) EXPECT_EQ(solution_from_json(solution_to_json(s), p.qdom), s);
  nlohmann::json j = nlohmann::json::parse(solutions_to_json(res));
  EXPECT_EQ(j["solutions"].size(), res.solutions.size());
  EXPECT_FALSE(j["exhausted"].get<bool>());
}

TEST(JsonModels, ListsEveryGenerator) {
  Program p = parse_program(data("library.sqclp"));
  LfpResult lfp = tp_lfp(p, ConstraintStore(), TermUniverse::ground(p, 1), 16);
  nlohmann::json j = nlohmann::json::parse(model_to_json(lfp));
  EXPECT_TRUE(j.is_object());
  nlohmann::json gens = nlohmann::json::parse(interpretation_to_json(lfp.model));
  EXPECT_EQ(gens.size(), lfp.model.generators.size());
  for (std::size_t i = 0; i < lfp.model.generators.size(); ++i)
    EXPECT_EQ(qcatom_from_json(gens[i].dump(), p.qdom), lfp.model.generators[i]);
}
