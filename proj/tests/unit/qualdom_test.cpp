#include "gen.hpp"

#include "sqclp/constraints.hpp"
#include "sqclp/qualdom.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace sqclp;

namespace {

QualValue u(long p, long q = 1) { return QualValue::certainty(Rational(p, q)); }
QualValue w(long c) { return QualValue::cost(Rational(c)); }
QualValue uw(long p, long q, long c) { return QualValue::pair(u(p, q), w(c)); }

const QualDomain kU = QualDomain::certainty();
const QualDomain kW = QualDomain::weight();
const QualDomain kUW = make_product(kU, kW, true);

std::vector<QualDomain> basic_domains() {
  return {QualDomain::boolean(),     QualDomain::certainty(), QualDomain::certainty_min(),
          QualDomain::weight(),      QualDomain::weight_max(), QualDomain::weight_nat(),
          QualDomain::weight_nat_max()};
}

std::vector<QualDomain> product_domains() {
  return {kUW,
          make_product(QualDomain::certainty_min(), QualDomain::weight_max(), true),
          make_product(QualDomain::boolean(), kU, true),
          make_product(kU, kW, false),
          make_product(QualDomain::boolean(), QualDomain::boolean(), false),
          make_product(kUW, QualDomain::weight_nat(), true)};
}

}  // namespace

TEST(QualDomainOrder, CertaintyFollowsNumbers) { EXPECT_TRUE(kU.leq(u(1, 2), u(9, 10))); }

TEST(QualDomainOrder, WeightIsReversed) {
  EXPECT_TRUE(kW.leq(w(5), w(3)));
  EXPECT_FALSE(kW.leq(w(3), w(5)));
  EXPECT_TRUE(kW.leq(QualValue::infinite_cost(), w(0)));
}

TEST(QualDomainOrder, StrictProductIsComponentwise) {
  // a goal threshold (0.55,30) is met by the degree (0.6,5)
  EXPECT_TRUE(kUW.leq(uw(55, 100, 30), uw(6, 10, 5)));
  EXPECT_FALSE(kUW.leq(uw(6, 10, 5), uw(55, 100, 30)));
}

TEST(QualDomainOrder, CarrierMismatchThrows) {
  EXPECT_THROW(kU.leq(w(1), u(1)), CarrierError);
  EXPECT_THROW(kU.glb(u(2), u(1)), CarrierError);
  EXPECT_FALSE(QualDomain::weight_nat().contains(QualValue::cost(Rational(1, 2))));
}

TEST(QualDomainLattice, GlbExamples) {
  EXPECT_EQ(kU.glb(u(9, 10), u(8, 10)), u(8, 10));
  EXPECT_EQ(kW.glb(w(1), w(2)), w(2));
  EXPECT_EQ(kUW.glb(uw(1, 2, 3), kUW.bottom()), kUW.bottom());
  EXPECT_EQ(kUW.bottom(), QualValue::pair(u(0), QualValue::infinite_cost()));
}

TEST(QualDomainLattice, InfimumExamples) {
  EXPECT_EQ(kU.infimum({}), u(1));
  EXPECT_EQ(kU.infimum({u(9, 10), u(8, 10)}), u(8, 10));
  EXPECT_EQ(kW.infimum({w(1), w(2)}), w(2));
}

TEST(QualDomainAttenuation, ProductStepOfTheLibraryExample) {
  // certainty 0.75 * 0.8, cost 3 + 2
  EXPECT_EQ(kUW.attenuate(uw(75, 100, 3), uw(8, 10, 2)), uw(6, 10, 5));
}

TEST(QualDomainAttenuation, OperationPerBasicDomain) {
  EXPECT_EQ(QualDomain::boolean().attenuate(QualValue::truth(true), QualValue::truth(false)), QualValue::truth(false));
  EXPECT_EQ(kU.attenuate(u(1, 2), u(1, 2)), u(1, 4));
  EXPECT_EQ(QualDomain::certainty_min().attenuate(u(1, 2), u(1, 4)), u(1, 4));
  EXPECT_EQ(kW.attenuate(w(2), w(3)), w(5));
  EXPECT_EQ(kW.attenuate(w(2), QualValue::infinite_cost()), QualValue::infinite_cost());
  EXPECT_EQ(QualDomain::weight_max().attenuate(w(2), w(3)), w(3));
  EXPECT_EQ(QualDomain::weight_nat().attenuate(w(2), w(3)), w(5));
}

TEST(QualDomainAttenuation, TopAndBottomOnEveryDomain) {
  testkit::Gen gen(7);
  std::vector<QualDomain> all = basic_domains();
  for (const QualDomain& p : product_domains()) all.push_back(p);
  for (const QualDomain& dom : all)
    for (const QualValue& d : gen.grid(dom)) {
      EXPECT_EQ(dom.attenuate(d, dom.top()), d) << dom.name() << " " << to_string(d);
      EXPECT_EQ(dom.attenuate(d, dom.bottom()), dom.bottom()) << dom.name() << " " << to_string(d);
    }
}

TEST(QualDomainProducts, StrictCertaintyWeight) {
  EXPECT_EQ(kUW.top(), uw(1, 1, 0));
  EXPECT_EQ(kUW.strict_pair(u(1, 2), kW.bottom()), kUW.bottom());
  EXPECT_FALSE(kUW.contains(QualValue::pair(u(1, 2), QualValue::infinite_cost())));
}

TEST(QualDomainProducts, BooleanSquareHasFourElements) {
  QualDomain bb = make_product(QualDomain::boolean(), QualDomain::boolean(), false);
  std::vector<QualValue> all;
  for (bool l : {false, true})
    for (bool r : {false, true}) all.push_back(QualValue::pair(QualValue::truth(l), QualValue::truth(r)));
  for (const QualValue& v : all) EXPECT_TRUE(bb.contains(v));
  std::set<std::string> distinct;
  for (const QualValue& v : all) distinct.insert(to_string(v));
  EXPECT_EQ(distinct.size(), 4u);
  EXPECT_FALSE(bb.leq(all[1], all[2]));
  EXPECT_FALSE(bb.leq(all[2], all[1]));
  EXPECT_EQ(bb.glb(all[1], all[2]), bb.bottom());
  EXPECT_EQ(bb.lub(all[1], all[2]), bb.top());
}

TEST(QualDomainThresholds, Examples) {
  EXPECT_TRUE(kUW.threshold_ok(uw(9, 10, 1), Threshold::at_least(uw(1, 2, 100))));
  EXPECT_TRUE(kU.threshold_ok(u(0), Threshold::any()));
  EXPECT_FALSE(kU.threshold_ok(u(7, 10), Threshold::at_least(u(8, 10))));
}

TEST(QualDomainStability, Examples) {
  EXPECT_TRUE(is_stable(kU, {{u(1, 2), u(1, 2)}}));
  EXPECT_TRUE(is_stable(QualDomain::boolean(), {}));
  EXPECT_TRUE(is_stable(kUW, {{uw(1, 2, 3), uw(1, 100, 40)}}));
}

TEST(QualDomainSyntax, ParseAndPrint) {
  EXPECT_EQ(parse_domain("UxW"), kUW);
  EXPECT_EQ(parse_domain("B*B"), make_product(QualDomain::boolean(), QualDomain::boolean(), false));
  EXPECT_EQ(parse_domain("U'"), QualDomain::certainty_min());
  EXPECT_EQ(parse_qual_value(kUW, "(0.75,3)"), uw(75, 100, 3));
  EXPECT_EQ(parse_qual_value(kW, "inf"), QualValue::infinite_cost());
  for (const QualDomain& dom : product_domains()) EXPECT_EQ(parse_domain(dom.name()), dom) << dom.name();
  testkit::Gen gen(11);
  for (const QualDomain& dom : basic_domains())
    for (const QualValue& v : gen.grid(dom)) EXPECT_EQ(parse_qual_value(dom, to_string(v)), v) << to_string(v);
}

TEST(QualDomainEncoding, CertaintyShapes) {
  Constraint bound = encode_qbound(kU, "X", "Y", "Z");
  ASSERT_EQ(bound.existential.size(), 1u);
  const std::string& x1 = bound.existential.front();
  std::vector<Atom> expected{Atom::primitive(Primitive::Mul, {Term::variable("Y"), Term::variable("Z"), Term::variable(x1)}),
                             Atom::primitive(Primitive::Le, {Term::variable("X"), Term::variable(x1)})};
  EXPECT_EQ(bound.atoms, expected);

  Constraint val = encode_qval(kU, "X");
  EXPECT_TRUE(val.existential.empty());
  std::vector<Atom> expected_val{Atom::primitive(Primitive::Lt, {Term::number(0), Term::variable("X")}),
                                 Atom::primitive(Primitive::Le, {Term::variable("X"), Term::number(1)})};
  EXPECT_EQ(val.atoms, expected_val);
}

TEST(QualDomainEncoding, CartesianProductHasNoEncoding) {
  EXPECT_THROW(encode_qval(make_product(kU, kW, false), "X"), std::exception);
}

TEST(QualDomainEncoding, WeightBoundAgreesWithTheLatticeOnAGrid) {
  Constraint bound = encode_qbound(kW, "X", "Y", "Z");
  Valuation sample{{{"X", Term::number(4)}, {"Y", Term::number(1)}, {"Z", Term::number(2)}}};
  EXPECT_TRUE(satisfies(sample, bound));
  // oracle: x ⊑ y∘z in W is x >= y + z
  for (long x = 0; x <= 6; ++x)
    for (long y = 0; y <= 3; ++y)
      for (long z = 0; z <= 3; ++z) {
        Valuation eta{{{"X", Term::number(x)}, {"Y", Term::number(y)}, {"Z", Term::number(z)}}};
        EXPECT_EQ(satisfies(eta, bound), x >= y + z) << x << " " << y << " " << z;
      }
}

// Algebraic laws on random triples drawn from each domain's grid.
class QualDomainLaws : public ::testing::TestWithParam<QualDomain> {};

TEST_P(QualDomainLaws, LatticeAndAttenuationAxioms) {
  const QualDomain& dom = GetParam();
  testkit::Gen gen(20260101);
  std::vector<QualValue> grid = gen.grid(dom);
  for (int i = 0; i < 1000; ++i) {
    const QualValue& a = gen.pick(grid);
    const QualValue& b = gen.pick(grid);
    const QualValue& c = gen.pick(grid);
    SCOPED_TRACE(to_string(a) + " " + to_string(b) + " " + to_string(c));
    EXPECT_TRUE(dom.leq(dom.bottom(), a));
    EXPECT_TRUE(dom.leq(a, dom.top()));
    EXPECT_EQ(dom.glb(a, a), a);
    EXPECT_EQ(dom.glb(a, b), dom.glb(b, a));
    EXPECT_EQ(dom.lub(a, b), dom.lub(b, a));
    EXPECT_EQ(dom.glb(a, dom.glb(b, c)), dom.glb(dom.glb(a, b), c));
    EXPECT_EQ(dom.lub(a, dom.lub(b, c)), dom.lub(dom.lub(a, b), c));
    EXPECT_EQ(dom.glb(a, dom.lub(a, b)), a);
    EXPECT_EQ(dom.lub(a, dom.glb(a, b)), a);
    EXPECT_EQ(dom.leq(a, b), dom.glb(a, b) == a);
    EXPECT_EQ(dom.attenuate(a, b), dom.attenuate(b, a));
    EXPECT_EQ(dom.attenuate(a, dom.attenuate(b, c)), dom.attenuate(dom.attenuate(a, b), c));
    EXPECT_TRUE(dom.leq(dom.attenuate(a, b), b));
    EXPECT_EQ(dom.attenuate(a, dom.glb(b, c)), dom.glb(dom.attenuate(a, b), dom.attenuate(a, c)));
    if (dom.leq(b, c)) {
      EXPECT_TRUE(dom.leq(dom.attenuate(a, b), dom.attenuate(a, c)));
    }
  }
}

// Basic domains and strict products: stable and expressible.
class StrictDomainLaws : public ::testing::TestWithParam<QualDomain> {};

TEST_P(StrictDomainLaws, Stable) {
  const QualDomain& dom = GetParam();
  testkit::Gen gen(99);
  std::vector<QualValue> grid = gen.grid(dom);
  std::vector<std::pair<QualValue, QualValue>> sample;
  for (const QualValue& a : grid)
    for (const QualValue& b : grid)
      if (!dom.is_bottom(a) && !dom.is_bottom(b)) sample.emplace_back(a, b);
  EXPECT_TRUE(is_stable(dom, sample));
  for (const auto& [a, b] : sample) EXPECT_FALSE(dom.is_bottom(dom.attenuate(a, b)));
}

TEST_P(StrictDomainLaws, EncodingsAgreeWithTheLattice) {
  const QualDomain& dom = GetParam();
  testkit::Gen gen(5);
  std::vector<QualValue> grid;
  for (const QualValue& v : gen.grid(dom))
    if (!dom.is_bottom(v)) grid.push_back(v);
  Constraint qval = encode_qval(dom, "X");
  Constraint qbound = encode_qbound(dom, "X", "Y", "Z");
  for (const QualValue& x : grid) {
    EXPECT_TRUE(satisfies(Valuation{{{"X", embed_value(dom, x)}}}, qval)) << to_string(x);
    for (const QualValue& y : grid)
      for (const QualValue& z : grid) {
        Valuation eta{{{"X", embed_value(dom, x)}, {"Y", embed_value(dom, y)}, {"Z", embed_value(dom, z)}}};
        EXPECT_EQ(satisfies(eta, qbound), dom.leq(x, dom.attenuate(y, z)))
            << to_string(x) << " " << to_string(y) << " " << to_string(z);
      }
  }
}

INSTANTIATE_TEST_SUITE_P(Basic, QualDomainLaws, ::testing::ValuesIn(basic_domains()),
                         [](const auto& info) { return "d" + std::to_string(info.index); });
INSTANTIATE_TEST_SUITE_P(Products, QualDomainLaws, ::testing::ValuesIn(product_domains()),
                         [](const auto& info) { return "p" + std::to_string(info.index); });

std::vector<QualDomain> strict_domains() {
  std::vector<QualDomain> out = basic_domains();
  for (const QualDomain& d : product_domains())
    if (d.kind() == QualDomain::Kind::Strict) out.push_back(d);
  return out;
}

INSTANTIATE_TEST_SUITE_P(All, StrictDomainLaws, ::testing::ValuesIn(strict_domains()),
                         [](const auto& info) { return "d" + std::to_string(info.index); });
