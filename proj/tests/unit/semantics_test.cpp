#include "corpus.hpp"

#include "sqclp/json_io.hpp"
#include "sqclp/semantics.hpp"

#include <gtest/gtest.h>

using namespace sqclp;

namespace {

QualValue u(long p, long q = 1) { return QualValue::certainty(Rational(p, q)); }
QualValue uw(long p, long q, long c) { return QualValue::pair(u(p, q), QualValue::cost(Rational(c))); }
std::string data(const std::string& name) { return testkit::read_text(std::string(SQCLP_DATA_DIR) + "/" + name); }

const QualDomain kU = QualDomain::certainty();
const ConstraintStore kRun(parse_constraints("cp_>(X, 1.0), op_+(A, A, X), op_*(2.0, A, Y)"));

QcAtom qc(std::string_view atom, QualValue d, ConstraintStore store = kRun) {
  return QcAtom{parse_atom(atom), std::move(d), std::move(store)};
}

Program running() { return parse_program(data("running.sqclp")); }
ProofTree running_proof() { return proof_from_json(data("running_proof.json"), kU); }

TermUniverse running_universe(const Program& p) { return TermUniverse::build(p, kRun, TermUniverse::Options{}); }

const Program kChain = parse_program(
    "#qdom U\npredicate p1/0\npredicate p2/0\npredicate p3/0\n"
    "~(p1, p2) = 0.9\n~(p2, p3) = 0.9\n~(p1, p3) = 0.4\np1\n");

}  // namespace

TEST(QcEntailment, Examples) {
  QcAtom phi3 = qc("r(c'(Y), c(X), Z)", u(8, 10));
  QcAtom phi3b = qc("r(c'(Y), c(X), c(Z1))", u(7, 10));
  EXPECT_EQ(qc_entails(kU, phi3, phi3b), Tristate::True);
  EXPECT_EQ(qc_entails(kU, phi3b, phi3), Tristate::False);
  EXPECT_EQ(qc_entails(kU, phi3, phi3), Tristate::True);
  EXPECT_EQ(qc_entails(kU, qc("p(a)", u(1, 2)), qc("p(a)", u(9, 10))), Tristate::False);
  // a weaker store on the entailed side cannot discharge the original store
  EXPECT_NE(qc_entails(kU, phi3, qc("r(c'(Y), c(X), Z)", u(8, 10), ConstraintStore())), Tristate::True);
}

TEST(QcEntailment, ObservableAtoms) {
  EXPECT_EQ(is_observable(kU, qc("p(X)", u(1, 2))), Tristate::True);
  EXPECT_EQ(is_observable(kU, qc("p(X)", u(0))), Tristate::False);
  EXPECT_EQ(is_observable(kU, qc("p(X)", u(1), ConstraintStore(parse_constraints("cp_<(X,0), cp_>(X,1)")))),
            Tristate::False);
}

TEST(QcEntailment, ProximityVariantIsNotTransitive) {
  QcAtom p1 = qc("p1", u(9, 10), ConstraintStore());
  QcAtom p2 = qc("p2", u(9, 10), ConstraintStore());
  QcAtom p3 = qc("p3", u(9, 10), ConstraintStore());
  EXPECT_EQ(proximity_entails(kChain.prox, p1, p2), Tristate::True);
  EXPECT_EQ(proximity_entails(kChain.prox, p2, p3), Tristate::True);
  EXPECT_EQ(proximity_entails(kChain.prox, p1, p3), Tristate::False);
}

TEST(Interpretations, UnionPruneIntersection) {
  QcAtom strong = qc("p(X)", u(9, 10), ConstraintStore());
  QcAtom weak = qc("p(a)", u(1, 2), ConstraintStore());
  EXPECT_EQ(prune(kU, {weak, strong}).generators, std::vector<QcAtom>{strong});
  Interpretation a{{qc("p(a)", u(9, 10), ConstraintStore())}};
  Interpretation b{{qc("p(a)", u(1, 2), ConstraintStore()), qc("q(b)", u(1), ConstraintStore())}};
  EXPECT_EQ(interpretation_union(kU, a, b).generators.size(), 2u);
  EXPECT_EQ(interpretation_intersection(kU, a, b).generators, std::vector<QcAtom>{weak});
}

TEST(Validity, Examples) {
  Program p = running();
  Interpretation empty;
  EXPECT_EQ(valid_in(p, empty, qc("Y == Y", u(1))), Tristate::True);
  EXPECT_EQ(valid_in(p, empty, qc("cp_>=(X, 0.0)", u(1))), Tristate::True);
  EXPECT_EQ(valid_in(p, empty, qc("q(X, c(X))", u(1), ConstraintStore())), Tristate::False);
}

TEST(ImmediateConsequence, RunningExample) {
  Program p = running();
  TermUniverse universe = running_universe(p);
  QcAtom phi1 = qc("q(X, c'(Y))", u(9, 10));
  QcAtom phi2 = qc("p'(c'(Y), c(X))", u(8, 10));
  QcAtom phi3 = qc("r(c'(Y), c(X), Z)", u(8, 10));

  Interpretation first{immediate_consequence(p, {}, *p.clause("R1"), "q", kRun, universe)};
  EXPECT_EQ(valid_in(p, first, phi1), Tristate::True);

  Interpretation from_phi1{{phi1}};
  Interpretation second{immediate_consequence(p, from_phi1, *p.clause("R2"), "p'", kRun, universe)};
  EXPECT_EQ(valid_in(p, second, phi2), Tristate::True);
  EXPECT_EQ(valid_in(p, second, qc("p'(c'(Y), c(X))", u(9, 10))), Tristate::False);

  Interpretation third{immediate_consequence(p, from_phi1, *p.clause("R3"), "r", kRun, universe)};
  EXPECT_EQ(valid_in(p, third, phi3), Tristate::True);
  EXPECT_EQ(valid_in(p, third, qc("r(c'(Y), c(X), Z)", u(9, 10))), Tristate::False);
}

TEST(Fixpoint, RunningExampleIterates) {
  Program p = running();
  LfpResult lfp = tp_lfp(p, kRun, running_universe(p), 16);
  ASSERT_TRUE(lfp.converged);
  ASSERT_GE(lfp.iterates.size(), 2u);
  EXPECT_EQ(valid_in(p, lfp.iterates[0], qc("q(X, c'(Y))", u(9, 10))), Tristate::True);
  EXPECT_EQ(valid_in(p, lfp.iterates[1], qc("p'(c'(Y), c(X))", u(8, 10))), Tristate::True);
  EXPECT_EQ(valid_in(p, lfp.iterates[1], qc("r(c'(Y), c(X), Z)", u(8, 10))), Tristate::True);
  EXPECT_EQ(is_prefixpoint(p, lfp.model, kRun, running_universe(p)), Tristate::True);

  // dropping the q facts loses a consequence of the program
  Interpretation without_q;
  for (const QcAtom& g : lfp.model.generators)
    if (g.atom.predicate() != "q") without_q.generators.push_back(g);
  EXPECT_EQ(is_prefixpoint(p, without_q, kRun, running_universe(p)), Tristate::False);
}

TEST(Fixpoint, EmptyProgram) {
  Program p = parse_program("#qdom U\n");
  LfpResult lfp = tp_lfp(p, ConstraintStore(), TermUniverse::ground(p, 1), 8);
  EXPECT_TRUE(lfp.converged);
  EXPECT_TRUE(lfp.model.generators.empty());
  EXPECT_EQ(lfp.iterations, 1u);
}

TEST(Fixpoint, BottomIsAPrefixpointExactlyWithoutFacts) {
  Program rules = parse_program("#qdom U\npredicate q/1\np(X) <-0.9- q(X)\n");
  EXPECT_EQ(is_prefixpoint(rules, {}, ConstraintStore(), TermUniverse::ground(rules, 1)), Tristate::True);
  std::uint64_t seed = testkit::base_seed(20260101);
  for (std::uint64_t i = 0; i < 20; ++i) {
    // corpus programs always open with a fact
    testkit::CorpusProgram cp = testkit::random_program(seed + i);
    EXPECT_EQ(is_prefixpoint(cp.program, {}, ConstraintStore(), TermUniverse::ground(cp.program, 1)), Tristate::False)
        << cp.source;
  }
}

TEST(Fixpoint, IteratesGrowMonotonically) {
  std::uint64_t seed = testkit::base_seed(20260101);
  for (std::uint64_t i = 0; i < 30; ++i) {
    testkit::CorpusProgram cp = testkit::random_program(seed + i);
    const Program& p = cp.program;
    LfpResult lfp = tp_lfp(p, ConstraintStore(), TermUniverse::ground(p, 1), 32);
    for (std::size_t k = 0; k + 1 < lfp.iterates.size(); ++k)
      for (const QcAtom& g : lfp.iterates[k].generators)
        EXPECT_EQ(valid_in(p, lfp.iterates[k + 1], g), Tristate::True) << cp.source << to_string(g);
    if (lfp.converged) {
      EXPECT_EQ(is_prefixpoint(p, lfp.model, ConstraintStore(), TermUniverse::ground(p, 1)), Tristate::True) << cp.source;
    }
  }
}

TEST(ProofChecking, RunningExampleTree) {
  Program p = running();
  ProofTree tree = running_proof();
  EXPECT_EQ(check_proof(p, tree), Tristate::True);
  EXPECT_EQ(proof_stats(tree), (ProofStats{6, 2}));

  ProofTree inflated = tree;
  inflated.node.degree = u(95, 100);
  EXPECT_EQ(check_proof(p, inflated), Tristate::False);

  ProofTree wrong_clause = tree;
  wrong_clause.clause_id = "R3";
  EXPECT_THROW(check_proof(p, wrong_clause), MalformedProof);
}

TEST(ProofChecking, PrimitiveLeaf) {
  Program p = running();
  ConstraintStore pi(parse_constraints("cp_>=(A, 3.0), op_+(A, A, X), op_*(2.0, A, Y)"));
  for (const QualValue& d : {u(1, 10), u(1, 2), u(1)}) {
    ProofTree leaf{qc("cp_>(X, 5.5)", d, pi), RuleTag::SQPA, "", {}, {}};
    EXPECT_EQ(check_proof(p, leaf), Tristate::True);
    EXPECT_EQ(proof_stats(leaf), (ProofStats{1, 0}));
  }
  ProofTree too_strong{qc("cp_>(X, 6.5)", u(1), pi), RuleTag::SQPA, "", {}, {}};
  EXPECT_EQ(check_proof(p, too_strong), Tristate::False);
}

TEST(ProofChecking, FactWithHeadEquations) {
  Program p = running();
  DeriveResult r = derive(p, qc("q(a, c(a))", u(1), ConstraintStore()), 4);
  ASSERT_TRUE(r.proof);
  EXPECT_EQ(proof_stats(*r.proof), (ProofStats{3, 1}));
  EXPECT_EQ(check_proof(p, *r.proof), Tristate::True);
}

TEST(Derivation, RunningExample) {
  Program p = running();
  DeriveResult r = derive(p, qc("p'(c'(Y), c(X))", u(8, 10)), 4);
  ASSERT_TRUE(r.proof);
  EXPECT_EQ(r.proof->rule, RuleTag::SQDA);
  EXPECT_EQ(proof_stats(*r.proof).defined_steps, 2u);
  EXPECT_EQ(check_proof(p, *r.proof), Tristate::True);
  EXPECT_FALSE(derive(p, qc("p'(c'(Y), c(X))", u(85, 100)), 4).proof);
}

TEST(Derivation, LibraryExample) {
  Program p = parse_program(data("library.sqclp"));
  DeriveResult r = derive(p, QcAtom{parse_atom("goodWork(king_liar)"), uw(6, 10, 5), ConstraintStore()}, 4);
  ASSERT_TRUE(r.proof);
  EXPECT_EQ(check_proof(p, *r.proof), Tristate::True);
  // matching king_liar in the head instead of the body gives (0.675,4)
  EXPECT_TRUE(derive(p, QcAtom{parse_atom("goodWork(king_liar)"), uw(675, 1000, 4), ConstraintStore()}, 4).proof);
  EXPECT_FALSE(derive(p, QcAtom{parse_atom("goodWork(king_liar)"), uw(7, 10, 4), ConstraintStore()}, 4).proof);
}

TEST(Derivation, ProximityIsNotChained) {
  EXPECT_FALSE(derive(kChain, qc("p3", u(9, 10), ConstraintStore()), 4).proof);
  EXPECT_TRUE(derive(kChain, qc("p3", u(4, 10), ConstraintStore()), 4).proof);
  EXPECT_TRUE(derive(kChain, qc("p2", u(9, 10), ConstraintStore()), 4).proof);
}
