#include <gtest/gtest.h>

#include "mubg/bclass.hpp"
#include "mubg/error.hpp"

using namespace mubg;

namespace {

IntVector unit_vector(const ModelBlock& b, const Exponents& e) {
  IntVector v(b.size());
  v[*b.find(e)] = 1;
  return v;
}

}  // namespace

TEST(QuotientModel, AdditiveTruncatedBasis) {
  QuotientModel m(make_additive(2), 2, 1, 0, {0, 6}, CoeffRing::integers());
  for (int k = 0; k <= 3; ++k) {
    ModelBlock b = m.block(2 * k);
    ASSERT_EQ(b.size(), 1u) << k;
    EXPECT_EQ(b.monomials[0], (Exponents{k}));
    // [2](x) = 2x kills 2*x^k for k >= 1
    EXPECT_EQ(b.relations.contains(IntVector{BigInt(2)}), k >= 1);
    EXPECT_FALSE(b.relations.contains(IntVector{BigInt(1)}));
  }
  EXPECT_EQ(m.block(8).size(), 0u);
}

TEST(QuotientModel, InvertedBasisReachesTheFloor) {
  QuotientModel m = QuotientModel(make_additive(2), 2, 1, 0, {-2, 6}, CoeffRing::integers()).with_inverted(1);
  EXPECT_TRUE(m.block(-2).find({-1}).has_value());
  EXPECT_TRUE(m.block(-4).find({-2}).has_value());
  EXPECT_EQ(m.block(-6).size(), 0u);
}

TEST(QuotientModel, MultiplicativeReduction) {
  QuotientModel m(make_multiplicative(2), 2, 1, 0, {0, 4}, CoeffRing::integers());
  ModelBlock b = m.block(2);
  IntVector two_x = unit_vector(b, {1, 0});
  two_x[*b.find({1, 0})] = 2;
  // 2x = beta*x^2
  EXPECT_EQ(b.reduce(two_x), b.reduce(unit_vector(b, {2, 1})));
  EXPECT_EQ(m.render(m.p_series_in(0)), "2*x - x^2*beta");
  EXPECT_EQ(m.render(m.p_series_over_x(0)), "2 - x*beta");
}

TEST(QuotientModel, Validation) {
  auto Z = CoeffRing::integers();
  EXPECT_THROW(QuotientModel(make_additive(2), 4, 1, 0, {0, 6}, Z), BclassError);
  EXPECT_THROW(QuotientModel(make_additive(2), 2, 1, 0, {0, 1}, Z), BclassError);
  EXPECT_THROW(QuotientModel(make_additive(2), 2, 1, 0, {1, 6}, Z), BclassError);
  EXPECT_THROW(QuotientModel(make_additive(2), 2, 1, 0, {0, 6}, CoeffRing::modular(3, 2)), BclassError);
  EXPECT_THROW(QuotientModel(make_multiplicative(2, BigInt(1)), 2, 1, 0, {0, 6}, Z), BclassError);
  QuotientModel big(make_universal(3, 2), 2, 3, 7, {-6, 12}, Z, 50);
  EXPECT_THROW(big.block(0), BclassError);
}

TEST(Localization, InclusionAndComposite) {
  auto Z = CoeffRing::integers();
  QuotientModel base(make_multiplicative(2), 2, 2, 0, {-3, 6}, Z);
  QuotientModel mx = base.with_inverted(1);
  QuotientModel mxy = base.with_inverted(3);
  for (int deg : {-4, 0, 2, 4}) {
    ModelBlock b0 = base.block(deg);
    ModelBlock b1 = mx.block(deg);
    auto direct = localization_map(base, mxy, deg);
    auto composite = compose_maps(localization_map(base, mx, deg), localization_map(mx, mxy, deg),
                                  mxy.block(deg).size(), Z);
    EXPECT_EQ(direct, composite) << deg;
    auto inc = localization_map(base, b0, mx, b1);
    for (std::size_t i = 0; i < b0.size(); ++i) {
      EXPECT_EQ(inc[i], unit_vector(b1, b0.monomials[i])) << deg;
    }
  }
  EXPECT_THROW(localization_map(mx, base, 0), BclassError);
}

TEST(Cech, DSquaredStandardSign) {
  auto R = CoeffRing::modular(2, 3);
  for (int n : {2, 3}) {
    CechComplex c(QuotientModel(make_additive(2), 2, n, 0, {-2, 4}, R));
    for (int deg : c.base().default_degrees()) EXPECT_TRUE(d_squared_zero(c.at(deg), R)) << n << " " << deg;
  }
}

TEST(Cech, LiteralSignBreaksForThreeVariables) {
  auto R = CoeffRing::modular(2, 3);
  CechComplex two(QuotientModel(make_additive(2), 2, 2, 0, {-2, 4}, R), SignRule::literal);
  EXPECT_TRUE(d_squared_zero(two.at(0), R));
  CechComplex three(QuotientModel(make_additive(2), 2, 3, 0, {-2, 4}, R), SignRule::literal);
  bool all = true;
  for (int deg : three.base().default_degrees()) all = all && d_squared_zero(three.at(deg, false), R);
  EXPECT_FALSE(all);
}

TEST(Cech, E2OneVariableAdditive) {
  // R_0 = Z/8 in degree 0 maps onto R_x = Z/8/(2); column -1 holds x^-1 with 2x^-1 = 0.
  auto R = CoeffRing::modular(2, 3);
  CechComplex c(QuotientModel(make_additive(2), 2, 1, 0, {-3, 8}, R));
  E2Table t = compute_e2(c, {-2, 0}, 1);
  EXPECT_EQ(t.stability_margin, 4);
  std::map<std::pair<int, int>, IntVector> got;
  for (const auto& e : t.entries) got[{e.column, e.degree}] = e.invariants;
  EXPECT_EQ(got.at({0, 0}), IntVector{BigInt(4)});
  EXPECT_EQ(got.at({-1, -2}), IntVector{BigInt(2)});
  EXPECT_TRUE(got.at({-1, 0}).empty());
  EXPECT_TRUE(got.at({0, -2}).empty());
}

TEST(Tate, AdditiveRelationsAreTorsion) {
  for (int p : {2, 3}) {
    TatePresentation t = tate_kernel_cokernel(make_additive(2), p, {-3, 8});
    EXPECT_TRUE(t.verified()) << t.describe();
    EXPECT_EQ(t.kernel_generator, std::to_string(p));
    ASSERT_EQ(t.relations.size(), 3u);
    for (int i = 1; i <= 3; ++i) {
      EXPECT_EQ(t.relations[static_cast<std::size_t>(i - 1)], std::to_string(p) + "*y" + std::to_string(i));
    }
  }
}

TEST(Tate, MultiplicativeRelations) {
  TatePresentation t = tate_kernel_cokernel(make_multiplicative(2), 2, {-3, 8});
  EXPECT_TRUE(t.verified()) << t.describe();
  EXPECT_EQ(t.relations[0], "2*y1");
  EXPECT_EQ(t.relations[1], "-y1*beta + 2*y2");
  EXPECT_EQ(t.kernel_generator, "2 - x*beta");
  EXPECT_EQ(t.a_coefficients[0], "-beta");
  EXPECT_THROW(tate_kernel_cokernel(make_additive(2), 2, {0, 8}), BclassError);
}

TEST(Collapse, MultiplicativeHolds) {
  CollapseCertificate c = collapse_witness(make_multiplicative(2), 2, {-3, 8}, CoeffRing::integers());
  EXPECT_TRUE(c.holds()) << c.describe();
  EXPECT_EQ(c.generator, "4 - 2*x*beta - 2*y*beta + x*y*beta^2");
}

TEST(Collapse, AdditiveKernelIsLargerThanTheIdeal) {
  CollapseCertificate c = collapse_witness(make_additive(2), 2, {-3, 8}, CoeffRing::integers(), {0});
  EXPECT_EQ(c.generator, "4");
  ASSERT_EQ(c.degrees.size(), 1u);
  EXPECT_TRUE(c.degrees[0].ideal_in_kernel);
  EXPECT_FALSE(c.degrees[0].kernel_in_ideal);
  EXPECT_EQ(c.degrees[0].counterexample.value_or(""), "kernel element 2 outside the ideal");
}

TEST(Collapse, TamperedDifferentialYieldsCounterexample) {
  auto tamper = [](std::vector<IntVector>& rows) {
    for (auto& r : rows) {
      for (auto& x : r) x = 0;
    }
  };
  CollapseCertificate c =
      collapse_witness(make_multiplicative(2), 2, {-3, 8}, CoeffRing::integers(), {0}, 1, +tamper);
  EXPECT_FALSE(c.holds());
  ASSERT_TRUE(c.degrees[0].counterexample.has_value());
  EXPECT_NE(c.degrees[0].counterexample->find("outside the ideal"), std::string::npos);
}

TEST(Cech, E2TopColumnIsLocalCohomology) {
  // Additive, p=2 over Z/4: column -2 is spanned by x^-i y^-j (i, j >= 1, inside the floor),
  // each killed by 2 through 2x * x^-i-1 y^-j.
  auto R = CoeffRing::modular(2, 2);
  CechComplex c(QuotientModel(make_additive(2), 2, 2, 0, {-2, 4}, R));
  E2Table t = compute_e2(c, {-8, -6, -4, -2, 0}, 2);
  std::map<int, IntVector> top;
  for (const auto& e : t.entries) {
    if (e.column == -2) top[e.degree] = e.invariants;
  }
  const BigInt two(2);
  EXPECT_EQ(top.at(-8), (IntVector{two}));
  EXPECT_EQ(top.at(-6), (IntVector{two, two}));
  EXPECT_EQ(top.at(-4), (IntVector{two}));
  EXPECT_TRUE(top.at(-2).empty());
  EXPECT_TRUE(top.at(0).empty());
}
