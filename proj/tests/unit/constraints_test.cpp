#include "gen.hpp"

#include "sqclp/constraints.hpp"
#include "sqclp/program.hpp"

#include <gtest/gtest.h>

using namespace sqclp;

namespace {

Atom A(std::string_view text) { return parse_atom(text); }
Term T(std::string_view text) { return parse_term(text); }
ConstraintStore store_of(std::string_view text) { return ConstraintStore(parse_constraints(text)); }

Valuation val(std::initializer_list<std::pair<std::string, Term>> bindings) {
  return Valuation(std::map<std::string, Term>(bindings.begin(), bindings.end()));
}

const std::vector<std::string> kNum{"X", "Y", "Z"};

// Every valuation of X, Y, Z over a small grid of halves.
std::vector<Valuation> grid_valuations() {
  std::vector<Rational> points;
  for (long h = -4; h <= 14; ++h) points.push_back(Rational(h, 2));
  std::vector<Valuation> out;
  for (const Rational& x : points)
    for (const Rational& y : points)
      for (const Rational& z : points)
        out.push_back(val({{"X", Term::number(x)}, {"Y", Term::number(y)}, {"Z", Term::number(z)}}));
  return out;
}

const ConstraintStore kRunning = store_of("cp_>=(A,3.0), op_+(A,A,X), op_*(2.0,A,Y)");

}  // namespace

TEST(Primitives, Evaluation) {
  EXPECT_TRUE(eval_primitive(A("op_+(2, 3, 5)")));
  EXPECT_FALSE(eval_primitive(A("op_+(c(1), 1, 2)")));
  EXPECT_TRUE(eval_primitive(A("cp_>=(3.0, 3.0)")));
  EXPECT_FALSE(eval_primitive(A("cp_<(3.0, 3.0)")));
  EXPECT_TRUE(eval_primitive(A("op_-(5, 3, 2)")));
  EXPECT_TRUE(eval_primitive(A("op_*(2, 0.5, 1)")));
}

TEST(Satisfies, Examples) {
  EXPECT_TRUE(satisfies(val({{"X", T("1")}, {"Y", T("1")}}), {Atom::equation(T("X"), T("Y"))}));
  EXPECT_TRUE(satisfies(val({{"A", T("3")}, {"X", T("6")}, {"Y", T("6")}}), kRunning.atoms()));
  EXPECT_FALSE(satisfies(val({{"X", T("c(1)")}, {"Y", T("1")}, {"Z", T("2")}}), {A("op_+(X,Y,Z)")}));
}

TEST(Satisfies, ExistentialWitness) {
  Constraint pi{{"W"}, {A("op_+(X,W,Y)"), A("cp_>=(W,0)")}, {}};
  EXPECT_TRUE(satisfies(val({{"X", T("1")}, {"Y", T("4")}}), pi));
  EXPECT_FALSE(satisfies(val({{"X", T("4")}, {"Y", T("1")}}), pi));
}

TEST(Satisfiable, Examples) {
  EXPECT_EQ(store_of("cp_<(X,0), cp_>(X,1)").satisfiable(), Tristate::False);
  EXPECT_EQ(store_of("cp_>(X,1.0), op_+(A,A,X), op_*(2.0,A,Y)").satisfiable(), Tristate::True);
  EXPECT_EQ(store_of("op_*(X,Y,Z)").satisfiable(), Tristate::Unknown);
  EXPECT_EQ(store_of("X == c(X)").satisfiable(), Tristate::False);
  EXPECT_EQ(store_of("c(X) == d(Y)").satisfiable(), Tristate::False);
  EXPECT_EQ(ConstraintStore().satisfiable(), Tristate::True);
}

TEST(Entails, RunningStore) {
  EXPECT_EQ(kRunning.entails(A("cp_>(X,5.5)")), Tristate::True);
  EXPECT_EQ(kRunning.entails(Atom::equation(T("X"), T("Y"))), Tristate::True);
  EXPECT_EQ(kRunning.entails(Atom::equation(T("[X,Y]"), T("[Y,X]"))), Tristate::True);
  EXPECT_EQ(kRunning.entails(A("cp_>(X,6)")), Tristate::False);
}

TEST(PiEquiv, Examples) {
  ConstraintStore pi = store_of("Z == c(X,Y), op_+(A,A,X), op_*(2.0,A,Y)");
  EXPECT_EQ(pi_equiv(pi, T("c(Y,X)"), T("Z")), Tristate::True);
  EXPECT_EQ(pi_equiv(pi, T("d(Y,X)"), T("Z")), Tristate::False);
  EXPECT_EQ(pi_equiv(ConstraintStore(), T("c(X,a)"), T("c(X,a)")), Tristate::True);
  EXPECT_EQ(pi_equiv(ConstraintStore(), T("c(X,a)"), T("c(Y,a)")), Tristate::False);
}

TEST(CanonicalForm, Examples) {
  ConstraintStore pi = store_of("X == Y");
  EXPECT_EQ(canonical_form(pi, T("c(Y)")), T("c(X)"));
  EXPECT_EQ(canonical_form(ConstraintStore(), T("c(Y,Z)")), T("c(Y,Z)"));
}

TEST(LinearFragment, VerdictsAgreeWithAGridOracle) {
  testkit::Gen gen(20260101);
  std::vector<Valuation> grid = grid_valuations();
  int decided = 0;
  for (int i = 0; i < 150; ++i) {
    ConstraintStore store(gen.linear_atoms(kNum, 1 + gen.below(3)));
    Atom goal = gen.linear_atom(kNum);
    Tristate sat = store.satisfiable();
    ASSERT_NE(sat, Tristate::Unknown) << to_string(store);
    if (sat == Tristate::False) {
      for (const Valuation& eta : grid) ASSERT_FALSE(satisfies(eta, store.atoms())) << to_string(store);
      continue;
    }
    std::optional<Valuation> w = store.witness(variables(goal));
    ASSERT_TRUE(w);
    EXPECT_TRUE(satisfies(*w, store.atoms())) << to_string(store);

    Tristate verdict = store.entails(goal);
    if (verdict == Tristate::True) {
      ++decided;
      for (const Valuation& eta : grid)
        if (satisfies(eta, store.atoms())) {
          ASSERT_TRUE(satisfies(eta, {goal})) << to_string(store) << " |= " << to_string(goal);
        }
    } else if (verdict == Tristate::False) {
      ++decided;
      std::optional<Valuation> cm = store.countermodel(goal);
      ASSERT_TRUE(cm) << to_string(store) << " |= " << to_string(goal);
      EXPECT_TRUE(satisfies(*cm, store.atoms()));
      EXPECT_FALSE(satisfies(*cm, {goal}));
    }
  }
  EXPECT_GT(decided, 100);
}

TEST(LinearFragment, EntailmentIsMonotone) {
  testkit::Gen gen(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<Atom> base = gen.linear_atoms(kNum, 1 + gen.below(2));
    Atom goal = gen.linear_atom(kNum);
    ConstraintStore small(base);
    if (small.entails(goal) != Tristate::True) continue;
    ConstraintStore big = small.with(gen.linear_atoms(kNum, 1 + gen.below(2)));
    EXPECT_EQ(big.entails(goal), Tristate::True) << to_string(big) << " |= " << to_string(goal);
  }
}

TEST(SubstitutionLemma, SolutionsCommuteWithSubstitution) {
  testkit::Gen gen(11);
  std::vector<Valuation> grid = grid_valuations();
  for (int i = 0; i < 60; ++i) {
    std::vector<Atom> atoms = gen.linear_atoms(kNum, 1 + gen.below(3));
    Substitution sigma = gen.numeric_substitution(kNum, kNum);
    std::vector<Atom> moved;
    for (const Atom& a : atoms) moved.push_back(sigma.apply(a));
    for (std::size_t k = 0; k < grid.size(); k += 97) {
      const Valuation& eta = grid[k];
      EXPECT_EQ(satisfies(eta, moved), satisfies(compose(sigma, eta), atoms));
    }
  }
}

TEST(SubstitutionLemma, EntailmentSurvivesSubstitution) {
  testkit::Gen gen(13);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    ConstraintStore store(gen.linear_atoms(kNum, 1 + gen.below(3)));
    Constraint pi{{}, {gen.linear_atom(kNum)}, {}};
    if (store.entails(pi) != Tristate::True) continue;
    ++checked;
    EXPECT_TRUE(subst_entailment_check(store, pi, Substitution()));
    EXPECT_TRUE(subst_entailment_check(store, pi, gen.numeric_substitution(kNum, kNum)));
  }
  EXPECT_GT(checked, 20);
}

TEST(HerbrandStores, EquivalenceIsAnEquivalence) {
  testkit::Gen gen(17);
  const std::vector<std::string> vars{"X", "Y", "Z", "U"};
  for (int i = 0; i < 40; ++i) {
    std::vector<Atom> eqs;
    for (std::size_t k = 1 + gen.below(3); k > 0; --k)
      eqs.push_back(Atom::equation(Term::variable(gen.pick(vars)), gen.term(2, vars)));
    ConstraintStore store(eqs);
    if (store.satisfiable() != Tristate::True) continue;
    std::vector<Term> terms;
    for (int k = 0; k < 8; ++k) terms.push_back(gen.term(2, vars));
    for (const std::string& v : vars) terms.push_back(Term::variable(v));
    for (const Term& t : terms) {
      EXPECT_EQ(pi_equiv(store, t, t), Tristate::True);
      for (const Term& s : terms) {
        Tristate ts = pi_equiv(store, t, s);
        EXPECT_EQ(ts, pi_equiv(store, s, t));
        if (ts != Tristate::True) continue;
        for (const Term& u : terms)
          if (pi_equiv(store, s, u) == Tristate::True) {
            EXPECT_EQ(pi_equiv(store, t, u), Tristate::True);
          }
      }
    }
  }
}

TEST(HerbrandStores, CanonicalFormKeepsShapeAndClass) {
  testkit::Gen gen(19);
  const std::vector<std::string> vars{"X", "Y", "Z", "U"};
  int checked = 0;
  while (checked < 500) {
    std::vector<Atom> eqs;
    for (std::size_t k = 1 + gen.below(3); k > 0; --k)
      eqs.push_back(Atom::equation(Term::variable(gen.pick(vars)), gen.pick(std::vector<Term>{
                                                                        Term::variable(gen.pick(vars)), gen.term(2, vars)})));
    ConstraintStore store(eqs);
    if (store.satisfiable() != Tristate::True) continue;
    Term t = gen.term(3, vars);
    Term cf = canonical_form(store, t);
    EXPECT_EQ(positions(cf), positions(t));
    EXPECT_EQ(canonical_form(store, cf), cf);
    EXPECT_EQ(pi_equiv(store, t, cf), Tristate::True);
    ++checked;
  }
}

TEST(HerbrandStores, ExtensionStaysEquivalent) {
  testkit::Gen gen(23);
  const std::vector<std::string> vars{"X", "Y", "Z"};
  ConstraintStore store(parse_constraints("X == c(a, Y), Z == g(b)"));
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    Term t = gen.term(2, vars);
    Term s = gen.term(3, vars);
    bool aligned = true;
    for (const Position& p : positions(t)) {
      if (!subterm(t, p).is_var()) continue;
      if (!valid_position(s, p) || pi_equiv(store, subterm(t, p), subterm(s, p)) != Tristate::True) aligned = false;
    }
    if (!aligned) continue;
    ++checked;
    EXPECT_EQ(pi_equiv(store, t, extend(t, s)), Tristate::True) << to_string(t) << " " << to_string(s);
  }
  EXPECT_GT(checked, 50);
}
