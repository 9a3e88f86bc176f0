#include <gtest/gtest.h>

#include "mubg/error.hpp"
#include "mubg/fgl.hpp"

using namespace mubg;

TEST(Fgl, ClosedForms) {
  EXPECT_EQ(to_text(make_additive(6).law()), "x + y");
  EXPECT_EQ(to_text(make_multiplicative(6).law()), "x + y - x*y*beta");
  EXPECT_EQ(to_text(make_multiplicative(6, BigInt(1)).law()), "x + y - x*y");
  EXPECT_EQ(make_multiplicative(4, BigInt(3)).label(), "multiplicative(beta=3)");
}

TEST(Fgl, UniversalQuadraticTerm) {
  FormalGroupLaw f = make_universal(1, 4);
  TruncSeries xy = coefficient_in(coefficient_in(f.law(), "x", 1), "y", 1);
  EXPECT_EQ(to_text(xy), "-2*m1");
}

TEST(Fgl, PSeries) {
  EXPECT_EQ(to_text(n_series(make_additive(6), 3)), "3*x");
  EXPECT_EQ(to_text(n_series(make_multiplicative(6), 2)), "2*x - x^2*beta");
  for (int p : {2, 3, 5, 7}) {
    TruncSeries s = n_series(make_multiplicative(8), p);
    const long binom2 = static_cast<long>(p) * (p - 1) / 2;
    const std::string c = binom2 == 1 ? "-" : std::to_string(-binom2) + "*";
    EXPECT_EQ(to_text(coefficient_in(s, "x", 2)), c + "beta") << p;
  }
  EXPECT_EQ(to_text(n_series(make_additive(4), 0)), "0");
}

TEST(Fgl, Axioms) {
  EXPECT_TRUE(check_fgl_axioms(make_additive(6)).ok);
  EXPECT_TRUE(check_fgl_axioms(make_multiplicative(6)).ok);
  EXPECT_TRUE(check_fgl_axioms(make_universal(3, 6)).ok);
}

TEST(Fgl, TamperedLawFailsUnitality) {
  FormalGroupLaw a = make_additive(4);
  TruncSeries bad = a.law() + parse_series("x^2", a.law().context());
  FglAxiomReport r = check_fgl_axioms(FormalGroupLaw(FglKind::user, {}, bad, "tampered"));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.axiom, "unitality");
  EXPECT_EQ(r.at, (Exponents{2, 0}));
  EXPECT_EQ(r.describe(), "fail at unitality, coefficient (2,0): expected 0, got 1");
}

TEST(Fgl, AsymmetricLawFailsSymmetry) {
  FormalGroupLaw a = make_additive(4);
  TruncSeries bad = a.law() + parse_series("x^2*y", a.law().context());
  FglAxiomReport r = check_fgl_axioms(FormalGroupLaw(FglKind::user, {}, bad, "tampered"));
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.axiom, "symmetry");
}

TEST(Fgl, TableRoundtrip) {
  FormalGroupLaw f = parse_fgl_table(
      "fgl-table 1\n"
      "# multiplicative\n"
      "params: beta=-2\n"
      "degree: 5\n"
      "F: x + y\n"
      "   - x*y*beta\n");
  EXPECT_EQ(f.kind(), FglKind::user);
  EXPECT_EQ(to_text(n_series(f, 2)), "2*x - x^2*beta");
  EXPECT_THROW(parse_fgl_table("fgl-table 2\ndegree: 3\nF: x + y\n"), Error);
  EXPECT_THROW(parse_fgl_table("fgl-table 1\ndegree: 3\nF: x + y + q\n"), Error);
  EXPECT_THROW(load_fgl_table("/nonexistent/table.fgl"), Error);
}

TEST(Fgl, ApplyInForeignContext) {
  FormalGroupLaw f = make_multiplicative(4);
  auto ctx = SeriesContext::make({{"u", 1, 0, {}}, {"beta", 0, 0, {}}}, 4, ScalarKind::integer());
  TruncSeries u = TruncSeries::variable(ctx, "u");
  EXPECT_EQ(to_text(f.apply(u, TruncSeries(ctx))), "u");
  EXPECT_EQ(to_text(f.apply(u, u)), "2*u - u^2*beta");
}
