#include <gtest/gtest.h>

#include "mubg/asw.hpp"
#include "mubg/error.hpp"

using namespace mubg;

namespace {

Scalar q(long a, long b = 1) { return Scalar::rational(Rational(a, b)); }

FixedComponent point_with_normal(std::vector<int> chars) {
  FixedComponent c;
  for (int j : chars) c.normal.lines.push_back({j, {}});
  return c;
}

FixedComponent p1_disk_bundle() {
  FixedComponent c;
  c.base = ModelBase({1});
  c.tangent = {{{0, {2}}}};
  c.normal = {{{1, {0}}}};
  return c;
}

}  // namespace

TEST(Rep, CharacterTables) {
  AbelianGroup z2 = AbelianGroup::cyclic(2);
  auto chars = irreducible_characters(z2);
  ASSERT_EQ(chars.size(), 2u);
  const auto k2 = ScalarKind::cyclotomic(2);
  EXPECT_EQ(chars[1].values, (std::vector<Scalar>{Scalar::one(k2), Scalar::from_int(k2, -1)}));

  AbelianGroup z4 = AbelianGroup::cyclic(4);
  const auto k4 = ScalarKind::cyclotomic(4);
  Scalar i = Scalar::zeta(4), one = Scalar::one(k4);
  auto c4 = irreducible_characters(z4);
  ASSERT_EQ(c4.size(), 4u);
  // values at g, g^2, g^3
  EXPECT_EQ(std::vector<Scalar>(c4[1].values.begin() + 1, c4[1].values.end()), (std::vector<Scalar>{i, -one, -i}));
  EXPECT_EQ(std::vector<Scalar>(c4[2].values.begin() + 1, c4[2].values.end()), (std::vector<Scalar>{-one, one, -one}));
  EXPECT_EQ(std::vector<Scalar>(c4[3].values.begin() + 1, c4[3].values.end()), (std::vector<Scalar>{-i, -one, i}));

  AbelianGroup v4({2, 2});
  auto cv = irreducible_characters(v4);
  for (const auto& a : cv) {
    for (const auto& b : cv) {
      EXPECT_EQ(inner_product(v4, a, b).is_one(), a.index == b.index);
      EXPECT_EQ(inner_product(v4, a, b).is_zero(), a.index != b.index);
    }
  }
}

TEST(Rep, GroupBasics) {
  AbelianGroup g({2, 4});
  EXPECT_EQ(g.size(), 8);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_EQ(g.order_of({1, 2}), 2);
  EXPECT_EQ(g.order_of({1, 1}), 4);
  EXPECT_EQ(g.element_text(g.add({1, 3}, {1, 2})), "(0,1)");
  EXPECT_EQ(g.describe(), "Z/2 x Z/4");
  EXPECT_THROW(g.parse_element("1"), RepError);
  EXPECT_THROW(g.parse_element("1,x"), RepError);
  EXPECT_THROW(AbelianGroup({1}), RepError);
}

TEST(Rep, RestrictToCyclic) {
  AbelianGroup v4({2, 2});
  CyclicRestriction r = restrict_to_cyclic(v4, {1, 1});
  EXPECT_EQ(r.order, 2);
  EXPECT_EQ(r.subgroup, AbelianGroup::cyclic(2));
  CyclicRestriction e = restrict_to_cyclic(v4, {0, 0});
  EXPECT_EQ(e.order, 1);
  EXPECT_EQ(e.subgroup.size(), 1);
}

TEST(Rep, Integrality) {
  AbelianGroup z4 = AbelianGroup::cyclic(4);
  const auto k4 = ScalarKind::cyclotomic(4);
  std::vector<Element> els = z4.nonidentity_elements();
  IntegralityVerdict no = integrality_test(z4, els, {Scalar::zero(k4), Scalar::one(k4), Scalar::zero(k4)});
  EXPECT_FALSE(no.integral);
  EXPECT_FALSE(no.certificate.dual_witness.empty());
  IntegralityVerdict yes = integrality_test(z4, els, {Scalar::one(k4), Scalar::one(k4), Scalar::one(k4)});
  EXPECT_TRUE(yes.integral);

  AbelianGroup v4({2, 2});
  IntegralityVerdict half = integrality_test(v4, v4.nonidentity_elements(), {q(1, 2), q(1, 2), q(1, 2)});
  EXPECT_FALSE(half.integral);
  EXPECT_THROW(integrality_test(v4, v4.nonidentity_elements(), {q(1), q(1)}), RepError);
}

TEST(Chern, ChernCharacter) {
  ModelBase p1({1});
  auto ctx = p1.context(ScalarKind::rational());
  EXPECT_EQ(to_text(chern_character_at({{{0, {0}}}}, p1, ctx)), "1");
  EXPECT_EQ(to_text(chern_character_at({{{0, {1}}}}, p1, ctx)), "1 + a");
  for (int p : {2, 3, 5}) {
    auto zc = ModelBase::point().context(ScalarKind::cyclotomic(p));
    EXPECT_EQ(chern_character_at({{{1, {}}}}, ModelBase::point(), zc).constant_term(), Scalar::zeta(p));
  }
}

TEST(Chern, Todd) {
  ModelBase p1({1});
  auto ctx = p1.context(ScalarKind::rational());
  EXPECT_EQ(to_text(todd_class({{{0, {2}}}}, p1, ctx)), "1 + a");
  EXPECT_EQ(to_text(todd_class({}, p1, ctx)), "1");
  ModelBase p1p1({1, 1});
  auto c2 = p1p1.context(ScalarKind::rational());
  EXPECT_EQ(to_text(todd_class(default_tangent(p1p1), p1p1, c2)), "1 + a + b + a*b");
  EXPECT_EQ(default_tangent(p1).describe(), "(0 | 2)");
}

TEST(Chern, UClass) {
  ModelBase p1({1});
  for (int p : {3, 5}) {
    auto ctx = p1.context(ScalarKind::cyclotomic(p));
    EXPECT_EQ(to_text(u_class({{{1, {0}}, {2, {0}}}}, p1, ctx)), "1");
    EXPECT_EQ(to_text(u_class({}, p1, ctx)), "1");
    for (int j = 1; j < p; ++j) {
      // (z^j - 1)/(z^j - 1 + a) = 1 - a/(z^j - 1) under a^2 = 0
      TruncSeries u = u_class({{{j, {1}}}}, p1, ctx);
      Scalar expect = -(Scalar::zeta(p, j) - Scalar::one(ScalarKind::cyclotomic(p))).inverse();
      EXPECT_TRUE(u.constant_term().is_one());
      EXPECT_EQ(coefficient_of(u, {1}), expect) << p << " " << j;
    }
    EXPECT_THROW(u_class({{{0, {1}}}}, p1, ctx), ChernError);
  }
}

TEST(Chern, BetaClassesOfTrivialBundleVanish) {
  ModelBase p1({1});
  auto ctx = p1.context(ScalarKind::rational());
  for (std::size_t rank = 0; rank <= 3; ++rank) {
    for (const auto& b : beta_classes(EquivBundle::trivial(rank, 1), 3, p1, ctx)) EXPECT_TRUE(b.is_zero());
  }
}

TEST(Chern, FundamentalClass) {
  ModelBase p1({1});
  auto ctx = p1.context(ScalarKind::rational());
  EXPECT_TRUE(evaluate_fundamental(parse_series("1 + a", ctx), p1).is_one());
  EXPECT_TRUE(evaluate_fundamental(parse_series("1", ctx), p1).is_zero());
  ModelBase p1p1({1, 1});
  auto c2 = p1p1.context(ScalarKind::rational());
  EXPECT_TRUE(evaluate_fundamental(parse_series("1 + a + b + a*b", c2), p1p1).is_one());
}

TEST(Asw, CompX1ConstantTerm) {
  for (int p : {2, 3, 5}) {
    TruncSeries k = kappa_at(point_with_normal({1}), p, 4);
    const auto kind = ScalarKind::cyclotomic(p);
    Scalar expect = (Scalar::one(kind) - Scalar::zeta(p, -1)).inverse();
    EXPECT_EQ(k.constant_term().convert(kind), expect) << p;
  }
}

TEST(Asw, TrivialGroupToddGenus) {
  FixedComponent c;
  c.base = ModelBase({1});
  c.tangent = default_tangent(c.base);
  EXPECT_TRUE(kappa_at(c, 1, 3).constant_term().is_one());
}

TEST(Asw, PlumbingPointComponents) {
  FixedPointData d{AbelianGroup({2, 2}), {}, 2};
  d.components[{1, 1}] = {point_with_normal({1, 1}), point_with_normal({1, 1})};
  KappaResult r = kappa_character(d, 1);
  ASSERT_EQ(r.elements.size(), 3u);
  EXPECT_TRUE(r.values[0].is_zero());
  EXPECT_TRUE(r.values[1].is_zero());
  EXPECT_EQ(r.values[2].constant_term().as_rational(), Rational(1, 2));
}

TEST(Asw, EmptyDataGivesZeroCharacter) {
  FixedPointData d{AbelianGroup({3}), {}, 3};
  KappaResult r = kappa_character(d, 1);
  for (const auto& v : r.values) EXPECT_TRUE(v.is_zero());
}

TEST(Asw, Verdicts) {
  FixedPointData z4{AbelianGroup::cyclic(4), {}, 2};
  z4.components[{2}] = {point_with_normal({1}), point_with_normal({1})};
  NonvanishingCertificate c = nonvanishing_test(z4, 1);
  EXPECT_EQ(c.verdict, BoundaryVerdict::nonzero_boundary);
  ASSERT_TRUE(c.integrality.coefficient.has_value());
  for (int e : *c.integrality.coefficient) EXPECT_EQ(e, 0);

  FixedPointData plumb{AbelianGroup({2, 2}), {}, 3};
  plumb.components[{1, 0}] = {p1_disk_bundle()};
  plumb.components[{0, 1}] = {p1_disk_bundle()};
  plumb.components[{1, 1}] = {point_with_normal({1, 1}), point_with_normal({1, 1})};
  NonvanishingCertificate pc = nonvanishing_test(plumb, 1);
  EXPECT_EQ(pc.verdict, BoundaryVerdict::nonzero_boundary);
  for (const auto& v : pc.kappa.values) EXPECT_EQ(v.constant_term().as_rational(), Rational(1, 2));
  EXPECT_NE(pc.describe().find("verdict: NONZERO-BOUNDARY"), std::string::npos);

  FixedPointData two{AbelianGroup::cyclic(2), {}, 4};
  two.components[{1}] = {point_with_normal({1}), point_with_normal({1})};
  EXPECT_EQ(nonvanishing_test(two, 1).verdict, BoundaryVerdict::inconclusive);
}

TEST(Asw, ComponentValidation) {
  EXPECT_THROW(validate_component(point_with_normal({0}), 2), Error);
  EXPECT_THROW(validate_component(point_with_normal({4}), 4), Error);
  EXPECT_NO_THROW(validate_component(point_with_normal({5}), 4));
  FixedComponent bad = point_with_normal({1});
  bad.fiber = {1, 1};
  EXPECT_THROW(validate_component(bad, 3), Error);
  EXPECT_EQ(beta_denominator({1, 2}), Rational(4));
}
