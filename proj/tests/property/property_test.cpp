#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mubg/asw.hpp"
#include "mubg/bclass.hpp"

using namespace mubg;

namespace {

constexpr int kCases = 200;

std::mt19937& rng() {
  static std::mt19937 gen(20261014);
  return gen;
}

int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

const std::vector<FormalGroupLaw>& laws() {
  static const std::vector<FormalGroupLaw> all{make_additive(6), make_multiplicative(6),
                                               make_multiplicative(6, BigInt(3)), make_universal(1, 6),
                                               make_universal(2, 6), make_universal(3, 6)};
  return all;
}

AbelianGroup random_group(int max_factors = 3, int max_order = 6) {
  std::vector<int> orders(static_cast<std::size_t>(uniform(1, max_factors)));
  for (auto& n : orders) n = uniform(2, max_order);
  long size = 1;
  for (int n : orders) size *= n;
  if (size > 64) orders.resize(1);
  return AbelianGroup(orders);
}

ModelBase random_base() {
  switch (uniform(0, 3)) {
    case 0: return ModelBase::point();
    case 1: return ModelBase({1});
    case 2: return ModelBase({2});
    default: return ModelBase({1, 1});
  }
}

std::vector<int> random_c1(std::size_t factors, int span) {
  std::vector<int> c(factors);
  for (auto& x : c) x = uniform(-span, span);
  return c;
}

FixedComponent random_component(int order) {
  FixedComponent c;
  c.base = random_base();
  c.tangent = default_tangent(c.base);
  const int rank = uniform(1, 2);
  for (int i = 0; i < rank; ++i) c.normal.lines.push_back({uniform(1, order - 1), random_c1(c.base.factors(), 1)});
  if (uniform(0, 2) == 0) c.eval.lines.push_back({uniform(0, order - 1), random_c1(c.base.factors(), 1)});
  return c;
}

}  // namespace

TEST(Property, PSeriesAdditivity) {
  for (int i = 0; i < kCases; ++i) {
    const FormalGroupLaw& f = laws()[static_cast<std::size_t>(uniform(0, static_cast<int>(laws().size()) - 1))];
    const int m = uniform(0, 7), n = uniform(0, 7);
    TruncSeries lhs = n_series(f, m + n);
    TruncSeries rhs = f.apply(n_series(f, m), n_series(f, n));
    ASSERT_EQ(to_text(lhs), to_text(rhs)) << f.label() << " m=" << m << " n=" << n;
  }
}

TEST(Property, ExpLogRoundtrip) {
  for (int i = 0; i < kCases; ++i) {
    const int vars = uniform(1, 2);
    std::vector<Variable> v{{"x", 1, 0, {}}};
    if (vars == 2) v.push_back({"y", 1, 0, {}});
    auto ctx = SeriesContext::make(v, uniform(2, 6), uniform(0, 3) == 0 ? ScalarKind::cyclotomic(3)
                                                                        : ScalarKind::rational());
    TruncSeries a(ctx);
    const int terms = uniform(1, 4);
    for (int t = 0; t < terms; ++t) {
      Exponents e(v.size());
      int total = 0;
      for (auto& x : e) total += x = uniform(0, 3);
      if (total == 0) e[0] = 1;
      Scalar c = Scalar::from_rational(ctx->kind(), Rational(uniform(-5, 5), uniform(1, 4)));
      if (ctx->kind().tag == ScalarTag::cyclotomic && uniform(0, 1)) c *= Scalar::zeta(3);
      a.add_term(e, c);
    }
    ASSERT_EQ(log_series(exp_series(a)), a) << to_text(a);
    TruncSeries one_plus = TruncSeries::constant(ctx, Scalar::one(ctx->kind())) + a;
    ASSERT_EQ(exp_series(log_series(one_plus)), one_plus) << to_text(a);
  }
}

TEST(Property, ToddMultiplicativity) {
  for (int i = 0; i < kCases; ++i) {
    ModelBase base = random_base();
    auto ctx = base.context(ScalarKind::rational());
    EquivBundle e, f;
    for (int k = uniform(0, 3); k > 0; --k) e.lines.push_back({0, random_c1(base.factors(), 3)});
    for (int k = uniform(0, 3); k > 0; --k) f.lines.push_back({0, random_c1(base.factors(), 3)});
    TruncSeries whole = todd_class(e + f, base, ctx);
    ASSERT_EQ(whole, todd_class(e, base, ctx) * todd_class(f, base, ctx)) << base.describe();
    // td(L) td(L*) has no odd part: x/(1-e^-x) * (-x)/(1-e^x) is even in x.
    if (!e.lines.empty() && base.factors() == 1) {
      EquivBundle dual{{{0, {-e.lines[0].c1[0]}}}};
      TruncSeries prod = todd_class({{e.lines[0]}}, base, ctx) * todd_class(dual, base, ctx);
      for (const auto& [exp, c] : prod.terms()) ASSERT_EQ(exp[0] % 2, 0);
    }
  }
}

TEST(Property, KappaVanishesOnEmptyData) {
  for (int i = 0; i < kCases; ++i) {
    FixedPointData d{random_group(), {}, uniform(0, 4)};
    // explicitly empty component lists count as no fixed points
    if (uniform(0, 1)) d.components[d.group.nonidentity_elements().front()] = {};
    KappaResult r = kappa_character(d, 1);
    ASSERT_EQ(r.values.size(), d.group.nonidentity_elements().size());
    for (const auto& v : r.values) ASSERT_TRUE(v.is_zero()) << d.group.describe();
  }
}

TEST(Property, RestrictionConsistency) {
  for (int i = 0; i < kCases; ++i) {
    AbelianGroup g = random_group(2, 6);
    auto nonid = g.nonidentity_elements();
    Element h = nonid[static_cast<std::size_t>(uniform(0, static_cast<int>(nonid.size()) - 1))];
    const int ord = g.order_of(h);

    // Characters of G restricted to <h> and evaluated at h^m match direct evaluation.
    CyclicRestriction r = restrict_to_cyclic(g, h);
    ASSERT_EQ(r.order, ord);
    auto chars = irreducible_characters(g);
    const auto& j = chars[static_cast<std::size_t>(uniform(0, static_cast<int>(chars.size()) - 1))].index;
    const int m = uniform(0, 2 * ord);
    Scalar direct = character_value(g, j, g.multiple(h, m));
    Scalar restricted = Scalar::zeta(ord, static_cast<long>(r.restrict_character(g, j)) * m);
    ASSERT_EQ(direct, embed_cyclotomic(restricted, g.exponent())) << g.describe();

    // kappa at h computed in G equals kappa of the same data on <h> at its generator.
    const int bdeg = uniform(0, 2);
    FixedPointData on_g{g, {}, bdeg};
    std::vector<FixedComponent> comps;
    for (int k = uniform(1, 2); k > 0; --k) comps.push_back(random_component(ord));
    on_g.components[h] = comps;
    FixedPointData on_h{AbelianGroup::cyclic(ord), {}, bdeg};
    on_h.components[{1}] = comps;
    KappaResult kg = kappa_character(on_g, 1);
    KappaResult kh = kappa_character(on_h, 1);
    auto pos = std::find(kg.elements.begin(), kg.elements.end(), h) - kg.elements.begin();
    ASSERT_EQ(to_text(kg.values[static_cast<std::size_t>(pos)]), to_text(kh.values[0]));
    // and the same values arise when every element works in Q(zeta_e)
    auto wide = kappa_character_in_group_field(on_g);
    TruncSeries embedded = rehome(kh.values[0], wide[static_cast<std::size_t>(pos)].context());
    ASSERT_EQ(embedded, wide[static_cast<std::size_t>(pos)]);
  }
}

TEST(Property, CharacterOrthogonality) {
  for (int i = 0; i < kCases; ++i) {
    AbelianGroup g = random_group();
    auto chars = irreducible_characters(g);
    ASSERT_EQ(static_cast<long>(chars.size()), g.size());
    const auto& a = chars[static_cast<std::size_t>(uniform(0, static_cast<int>(chars.size()) - 1))];
    const auto& b = chars[static_cast<std::size_t>(uniform(0, static_cast<int>(chars.size()) - 1))];
    Scalar ip = inner_product(g, a, b);
    if (a.index == b.index) {
      ASSERT_TRUE(ip.is_one()) << g.describe();
    } else {
      ASSERT_TRUE(ip.is_zero()) << g.describe();
    }
  }
}

TEST(Property, IntegralityPositiveControls) {
  for (int i = 0; i < kCases; ++i) {
    AbelianGroup g = random_group(2, 5);
    auto chars = irreducible_characters(g);
    auto elements = g.nonidentity_elements();
    const auto kind = ScalarKind::cyclotomic(g.exponent());
    std::vector<Scalar> v(elements.size(), Scalar::zero(kind));
    auto all = g.elements();
    for (const auto& ch : chars) {
      const int c = uniform(-3, 3);
      if (c == 0) continue;
      for (std::size_t k = 0; k < elements.size(); ++k) {
        auto at = std::find(all.begin(), all.end(), elements[k]) - all.begin();
        v[k] += Scalar::from_int(kind, c) * ch.values[static_cast<std::size_t>(at)];
      }
    }
    IntegralityVerdict verdict = integrality_test(g, elements, v);
    ASSERT_TRUE(verdict.integral) << g.describe();
    ASSERT_TRUE(verdict.certificate.member);
  }
}

TEST(Property, CechDSquaredOnRandomWindows) {
  for (int i = 0; i < 40; ++i) {
    const int n = 2 + i % 3;
    const int p = uniform(0, 1) ? 2 : 3;
    const int floor = n == 4 ? uniform(-3, 0) : uniform(-5, 0);
    const int ceiling = n == 4 ? uniform(2, 6) : uniform(2, 10);
    const bool multiplicative = uniform(0, 1);
    CoeffRing ring = CoeffRing::modular(p, uniform(1, 3));
    FormalGroupLaw f = multiplicative ? make_multiplicative(2) : make_additive(2);
    CechComplex c(QuotientModel(f, p, n, 0, {floor, ceiling}, ring));
    auto degrees = c.base().default_degrees();
    const int deg = degrees[static_cast<std::size_t>(uniform(0, static_cast<int>(degrees.size()) - 1))];
    ASSERT_TRUE(d_squared_zero(c.at(deg, false), ring))
        << "n=" << n << " p=" << p << " window=[" << floor << "," << ceiling << "] degree " << deg;
  }
}

TEST(Property, E2StableUnderWindowGrowth) {
  // Entries well inside the window agree for nested windows.
  for (int i = 0; i < 6; ++i) {
    const int p = 2;
    CoeffRing ring = CoeffRing::modular(p, 2);
    FormalGroupLaw f = i % 2 ? make_multiplicative(2) : make_additive(2);
    const int d = uniform(6, 8);
    CechComplex small(QuotientModel(f, p, 1, 0, {-3, d}, ring));
    CechComplex large(QuotientModel(f, p, 1, 0, {-3, d + 4}, ring));
    const int deg = uniform(-2, 0) * 2;
    E2Table a = compute_e2(small, {deg}, 1);
    E2Table b = compute_e2(large, {deg}, 1);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k) ASSERT_EQ(a.entries[k].invariants, b.entries[k].invariants);
  }
}

TEST(Property, SubmoduleReductionIsCanonical) {
  for (int i = 0; i < kCases; ++i) {
    const bool modular = uniform(0, 1);
    CoeffRing ring = modular ? CoeffRing::modular(uniform(0, 1) ? 2 : 3, uniform(1, 3)) : CoeffRing::integers();
    const std::size_t dim = static_cast<std::size_t>(uniform(1, 5));
    std::vector<IntVector> gens(static_cast<std::size_t>(uniform(0, 5)), IntVector(dim));
    for (auto& g : gens) {
      for (auto& x : g) x = uniform(-6, 6);
    }
    IntVector v(dim);
    for (auto& x : v) x = uniform(-20, 20);
    Submodule a(ring, dim, gens);
    std::shuffle(gens.begin(), gens.end(), rng());
    Submodule b(ring, dim, gens);
    ASSERT_EQ(a.reduce(v), b.reduce(v));
    IntVector shifted = v;
    if (!gens.empty()) {
      for (std::size_t k = 0; k < dim; ++k) shifted[k] += 3 * gens[0][k];
    }
    ASSERT_EQ(a.reduce(v), a.reduce(shifted));
  }
}

TEST(Property, SmithDiagonalizes) {
  for (int i = 0; i < kCases; ++i) {
    IntMatrix m(static_cast<std::size_t>(uniform(1, 4)), static_cast<std::size_t>(uniform(1, 4)));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = uniform(-9, 9);
    }
    SmithForm s = smith_normal_form(m);
    IntMatrix d = s.left * m * s.right;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      for (std::size_t c = 0; c < d.cols(); ++c) ASSERT_EQ(d(r, c), r == c ? s.diagonal[r] : BigInt(0));
    }
    for (std::size_t k = 1; k < s.diagonal.size(); ++k) {
      if (s.diagonal[k - 1] != 0) ASSERT_EQ(s.diagonal[k] % s.diagonal[k - 1], 0);
    }
    ASSERT_EQ(s.diagonal, smith_invariants(m));
  }
}
