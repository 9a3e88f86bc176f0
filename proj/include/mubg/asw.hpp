#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mubg/chern.hpp"
#include "mubg/rep.hpp"

namespace mubg {

// One component of the fixed set of an element g. Characters are
// characters of <g>, integers mod ord(g).
struct FixedComponent {
  ModelBase base;
  EquivBundle tangent;
  EquivBundle normal;
  EquivBundle eval;         // E; empty means the trivial line
  std::vector<int> fiber;   // characters of V; empty means those of the normal bundle
};

struct FixedPointData {
  AbelianGroup group;
  std::map<Element, std::vector<FixedComponent>> components;  // non-identity elements only
  int b_degree = 4;  // sum of i * n_i over b_I = prod b_i^{n_i}
};

// Series context on b_1..b_K (weight 2i) over Q(zeta_field).
ContextPtr b_context(int b_degree, int field);

// Checks character ranges, V^H = 0 and the fiber/normal multiset match.
void validate_component(const FixedComponent& c, int order);

// kappa of one component at an element of order `order`, computed over
// Q(zeta_field) (field a multiple of order): sum_I b_I {ch(E) beta_I(T - rank)
// U(nu) td(M) / det(1 - h | V*)}[M], T = tangent + normal.
TruncSeries kappa_at(const FixedComponent& c, int order, int b_degree, int field = 0);

struct KappaResult {
  AbelianGroup group;
  int b_degree = 4;
  std::vector<Element> elements;     // non-identity, lexicographic
  std::vector<TruncSeries> values;   // over Q(zeta_ord(g))
  std::string describe() const;
};

KappaResult kappa_character(const FixedPointData& data, unsigned threads = 0);
// Same values computed in Q(zeta_e), e the exponent of G.
std::vector<TruncSeries> kappa_character_in_group_field(const FixedPointData& data);

enum class BoundaryVerdict { nonzero_boundary, inconclusive };

struct NonvanishingCertificate {
  KappaResult kappa;
  IntegralityVerdict integrality;
  BoundaryVerdict verdict = BoundaryVerdict::inconclusive;
  std::string describe() const;
};

// d_I = prod i^{n_i}: scale applied before the coefficientwise test.
Rational beta_denominator(const Exponents& e);

NonvanishingCertificate nonvanishing_test(const FixedPointData& data, unsigned threads = 0);

}  // namespace mubg
