#include <gtest/gtest.h>

#include "mubg/error.hpp"
#include "mubg/series.hpp"

using namespace mubg;

namespace {

ContextPtr single(int degree, ScalarKind kind = ScalarKind::rational(), int floor = 0) {
  return SeriesContext::make({{"x", 1, floor, {}}}, degree, kind);
}

TruncSeries S(const ContextPtr& ctx, std::string_view text) { return parse_series(text, ctx); }

}  // namespace

TEST(Series, Multiplication) {
  auto c = single(4);
  EXPECT_EQ(to_text(S(c, "x") * S(c, "x")), "x^2");
  EXPECT_EQ(to_text(S(c, "1 + x") * S(c, "1 - x")), "1 - x^2");
  auto l = single(4, ScalarKind::rational(), -2);
  EXPECT_EQ(to_text(S(l, "x^-1") * S(l, "x^2")), "x");
}

TEST(Series, TruncationDropsHighTerms) {
  auto c = single(3);
  EXPECT_EQ(to_text(S(c, "x^2") * S(c, "x^2")), "0");
  EXPECT_EQ(to_text(S(c, "1 + x").pow(5)), "1 + 5*x + 10*x^2 + 10*x^3");
}

TEST(Series, Invert) {
  auto c = single(5, ScalarKind::integer());
  EXPECT_EQ(to_text(invert(S(c, "1 - x"))), "1 + x + x^2 + x^3 + x^4 + x^5");
  EXPECT_EQ(to_text(invert(S(c, "1"))), "1");
  auto l = single(5, ScalarKind::rational(), -5);
  EXPECT_EQ(to_text(invert(S(l, "2*x"))), "1/2*x^-1");
  EXPECT_THROW(invert(S(single(5), "x")), Error);
}

TEST(Series, InverseTimesSeriesIsOne) {
  auto ctx = SeriesContext::make({{"x", 1, 0, {}}, {"beta", 0, 0, {}}}, 6, ScalarKind::integer());
  TruncSeries a = S(ctx, "1 - x*beta");
  EXPECT_EQ(to_text(a * invert(a)), "1");
  EXPECT_EQ(to_text(invert(a)), "1 + x*beta + x^2*beta^2 + x^3*beta^3 + x^4*beta^4 + x^5*beta^5 + x^6*beta^6");
}

TEST(Series, Compose) {
  auto tc = SeriesContext::make({{"t", 1, 0, {}}}, 3, ScalarKind::rational());
  auto c = single(3);
  EXPECT_EQ(to_text(compose(S(tc, "t^2"), "t", S(c, "x + x^2"))), "x^2 + 2*x^3");
  EXPECT_EQ(to_text(compose(S(tc, "t"), "t", S(c, "x + 3*x^3"))), "x + 3*x^3");
  EXPECT_THROW(compose(S(tc, "t"), "t", S(c, "1 + x")), Error);
}

TEST(Series, ExpLog) {
  auto c = single(3);
  EXPECT_EQ(to_text(exp_series(S(c, "x"))), "1 + x + 1/2*x^2 + 1/6*x^3");
  EXPECT_EQ(to_text(log_series(S(c, "1"))), "0");
  auto d = single(8);
  TruncSeries a = S(d, "x + x^2");
  EXPECT_EQ(log_series(exp_series(a)), a);
  EXPECT_THROW(exp_series(S(single(3, ScalarKind::integer()), "x")), Error);
}

TEST(Series, CoefficientOf) {
  auto c = single(4, ScalarKind::integer());
  EXPECT_EQ(coefficient_of(S(c, "3*x + x^2"), {1}), Scalar(3));
  EXPECT_TRUE(coefficient_of(TruncSeries(c), {2}).is_zero());
  EXPECT_THROW(coefficient_of(S(c, "x"), {7}), Error);
}

TEST(Series, GradedLexOrderAndText) {
  auto ctx = SeriesContext::make({{"x", 1, 0, {}}, {"y", 1, 0, {}}}, 3, ScalarKind::integer());
  EXPECT_EQ(to_text(S(ctx, "y^2 + x*y + 2*x^2 - y + x")), "x - y + 2*x^2 + x*y + y^2");
  auto z = SeriesContext::make({{"b1", 2, 0, {}}}, 4, ScalarKind::cyclotomic(3));
  EXPECT_EQ(to_text(S(z, "(1/3 - 1/3*z)*b1 + (z)")), "(z) + (1/3 - 1/3*z)*b1");
}

TEST(Series, CapsImposeNilpotence) {
  auto ctx = SeriesContext::make({{"a", 2, 0, 1}}, 10, ScalarKind::rational());
  EXPECT_EQ(to_text(exp_series(S(ctx, "2*a"))), "1 + 2*a");
}

TEST(Series, SubstituteAndRehome) {
  auto xy = SeriesContext::make({{"x", 1, 0, {}}, {"y", 1, 0, {}}}, 4, ScalarKind::integer());
  auto t = SeriesContext::make({{"t", 1, 0, {}}}, 4, ScalarKind::integer());
  TruncSeries f = S(xy, "x + y - x*y");
  TruncSeries g = substitute(f, t, {S(t, "t"), S(t, "t")});
  EXPECT_EQ(to_text(g), "2*t - t^2");
  auto wide = SeriesContext::make({{"x", 1, 0, {}}, {"y", 1, 0, {}}, {"z", 1, 0, {}}}, 4, ScalarKind::rational());
  EXPECT_EQ(to_text(rehome(f, wide)), "x + y - x*y");
}

TEST(Series, ParserRejectsBadInput) {
  auto c = single(3, ScalarKind::integer());
  EXPECT_THROW(S(c, "x^-1"), Error);
  EXPECT_THROW(S(c, "q"), Error);
  EXPECT_THROW(S(c, "2*"), Error);
}

TEST(Series, ContextValidation) {
  EXPECT_THROW(SeriesContext({{"x", 1, 1, {}}}, 3, ScalarKind::integer()), Error);
  EXPECT_THROW(SeriesContext({{"x", 1, 0, {}}, {"x", 1, 0, {}}}, 3, ScalarKind::integer()), Error);
}
