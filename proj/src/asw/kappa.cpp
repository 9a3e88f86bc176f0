#include <algorithm>
#include <sstream>

#include "mubg/asw.hpp"
#include "mubg/error.hpp"
#include "mubg/parallel.hpp"

namespace mubg {

namespace {

int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }

}  // namespace

ContextPtr b_context(int b_degree, int field) {
  std::vector<Variable> vars;
  for (int i = 1; i <= b_degree; ++i) vars.push_back({"b" + std::to_string(i), 2 * i, 0, {}});
  return SeriesContext::make(vars, 2 * b_degree, ScalarKind::cyclotomic(field));
}

void validate_component(const FixedComponent& c, int order) {
  auto lines_ok = [&](const EquivBundle& b, const char* what) {
    for (const auto& l : b.lines) {
      if (l.c1.size() != c.base.factors()) {
        throw AswError(std::string(what) + " summand has " + std::to_string(l.c1.size()) +
                       " Chern entries for a base with " + std::to_string(c.base.factors()) + " factors");
      }
    }
  };
  lines_ok(c.tangent, "tangent");
  lines_ok(c.normal, "normal");
  lines_ok(c.eval, "evaluation bundle");
  for (const auto& l : c.normal.lines) {
    if (mod(l.character, order) == 0) {
      throw AswError("normal summand with character " + std::to_string(l.character) + " fixed by <g> of order " +
                     std::to_string(order));
    }
  }
  if (!c.fiber.empty()) {
    std::vector<int> a, b;
    for (int j : c.fiber) a.push_back(mod(j, order));
    for (const auto& l : c.normal.lines) b.push_back(mod(l.character, order));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw AswError("fiber representation differs from the normal characters");
  }
}

TruncSeries kappa_at(const FixedComponent& c, int order, int b_degree, int field) {
  if (order < 1) throw AswError("element order must be >= 1");
  if (field == 0) field = order;
  if (field % order != 0) throw AswError("coefficient field order must be a multiple of the element order");
  if (b_degree < 0) throw AswError("b-degree must be >= 0");
  validate_component(c, order);
  const int scale = field / order;
  const auto kind = ScalarKind::cyclotomic(field);
  ContextPtr target = b_context(b_degree, field);
  ContextPtr ctx = c.base.context(kind, target->variables(), 2 * b_degree);

  EquivBundle eval = c.eval.lines.empty() ? EquivBundle::trivial(1, c.base.factors()) : c.eval;
  TruncSeries x = chern_character_at(eval, c.base, ctx, scale);
  x *= u_class(c.normal, c.base, ctx, scale);
  x *= todd_class(c.tangent, c.base, ctx);

  Scalar det = Scalar::one(kind);
  std::vector<int> fiber = c.fiber;
  if (fiber.empty()) {
    for (const auto& l : c.normal.lines) fiber.push_back(l.character);
  }
  for (int j : fiber) det *= Scalar::one(kind) - Scalar::zeta(field, mod(-static_cast<long>(j) * scale, field));
  if (det.is_zero()) throw AswError("det(1 - h | V*) vanishes");
  x = det.inverse() * x;

  // sum_I b_I beta_I = prod_i 1/(1 - b_i beta_i)
  if (b_degree > 0) {
    auto betas = beta_classes(c.tangent + c.normal, b_degree, c.base, ctx, scale);
    TruncSeries one = TruncSeries::from_int(ctx, 1);
    for (int i = 1; i <= b_degree; ++i) {
      x *= invert(one - TruncSeries::variable(ctx, "b" + std::to_string(i)) * betas[static_cast<std::size_t>(i - 1)]);
    }
  }
  return evaluate_fundamental(x, c.base, target);
}

std::string KappaResult::describe() const {
  std::ostringstream out;
  out << "kappa over " << group.describe() << ", b-degree " << b_degree << "\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out << "kappa" << group.element_text(elements[i]) << " = " << to_text(values[i]) << "\n";
  }
  return out.str();
}

KappaResult kappa_character(const FixedPointData& data, unsigned threads) {
  KappaResult r;
  r.group = data.group;
  r.b_degree = data.b_degree;
  for (const auto& [g, comps] : data.components) {
    if (!data.group.contains(g)) throw AswError("fixed data for an element outside " + data.group.describe());
    if (data.group.is_identity(g)) throw AswError("fixed data given for the identity");
  }
  r.elements = data.group.nonidentity_elements();
  std::vector<std::optional<TruncSeries>> slots(r.elements.size());
  parallel_for(
      r.elements.size(),
      [&](std::size_t i) {
        const Element& g = r.elements[i];
        const int ord = data.group.order_of(g);
        TruncSeries sum(b_context(data.b_degree, ord));
        auto it = data.components.find(g);
        if (it != data.components.end()) {
          for (const auto& c : it->second) sum += kappa_at(c, ord, data.b_degree);
        }
        slots[i] = std::move(sum);
      },
      threads);
  for (auto& s : slots) r.values.push_back(std::move(*s));
  return r;
}

std::vector<TruncSeries> kappa_character_in_group_field(const FixedPointData& data) {
  std::vector<TruncSeries> out;
  const int e = data.group.exponent();
  for (const auto& g : data.group.nonidentity_elements()) {
    const int ord = data.group.order_of(g);
    TruncSeries sum(b_context(data.b_degree, e));
    auto it = data.components.find(g);
    if (it != data.components.end()) {
      for (const auto& c : it->second) sum += kappa_at(c, ord, data.b_degree, e);
    }
    out.push_back(std::move(sum));
  }
  return out;
}

Rational beta_denominator(const Exponents& e) {
  BigInt d = 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) d *= static_cast<long>(i + 1);
  }
  return Rational(d);
}

NonvanishingCertificate nonvanishing_test(const FixedPointData& data, unsigned threads) {
  NonvanishingCertificate cert;
  cert.kappa = kappa_character(data, threads);
  cert.integrality = integrality_test(data.group, cert.kappa.elements, cert.kappa.values, beta_denominator);
  cert.verdict = cert.integrality.integral ? BoundaryVerdict::inconclusive : BoundaryVerdict::nonzero_boundary;
  return cert;
}

std::string NonvanishingCertificate::describe() const {
  std::ostringstream out;
  out << kappa.describe();
  out << integrality.describe(kappa.group);
  out << "verdict: " << (verdict == BoundaryVerdict::nonzero_boundary ? "NONZERO-BOUNDARY" : "INCONCLUSIVE") << "\n";
  return out.str();
}

}  // namespace mubg
