#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "mubg/error.hpp"
#include "mubg/rep.hpp"

namespace mubg {

namespace {

int field_order_of(const AbelianGroup& g, const std::vector<Scalar>& values) {
  int n = std::max(1, g.exponent());
  for (const auto& v : values) {
    if (v.kind().tag == ScalarTag::cyclotomic) n = std::lcm(n, v.kind().order);
    if (v.kind().tag == ScalarTag::modular) throw RepError("integrality test on residues");
  }
  return n;
}

void check_elements(const AbelianGroup& g, const std::vector<Element>& elements, std::size_t values) {
  if (elements.size() != values) throw RepError("one value per chosen element is required");
  std::set<Element> seen;
  for (const auto& e : elements) {
    if (!g.contains(e)) throw RepError("element " + g.element_text(e) + " not in " + g.describe());
    if (!seen.insert(e).second) throw RepError("element " + g.element_text(e) + " listed twice");
  }
}

std::vector<std::vector<Scalar>> restricted_rows(const AbelianGroup& g, const std::vector<Element>& elements) {
  std::vector<std::vector<Scalar>> rows;
  for (const auto& j : g.elements()) {
    std::vector<Scalar> r;
    for (const auto& k : elements) r.push_back(character_value(g, j, k));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

IntegralityVerdict integrality_test(const AbelianGroup& g, const std::vector<Element>& elements,
                                    const std::vector<Scalar>& values) {
  check_elements(g, elements, values.size());
  IntegralityVerdict out;
  out.elements = elements;
  out.tested = values;
  out.field_order = field_order_of(g, values);
  out.certificate = lattice_member(values, restricted_rows(g, elements));
  out.integral = out.certificate.member;
  return out;
}

IntegralityVerdict integrality_test(const AbelianGroup& g, const std::vector<Element>& elements,
                                    const std::vector<TruncSeries>& values,
                                    const std::function<Rational(const Exponents&)>& scale) {
  check_elements(g, elements, values.size());
  IntegralityVerdict last;
  last.integral = true;
  last.elements = elements;
  if (values.empty()) return last;
  const SeriesContext& ctx = *values.front().context();
  for (const auto& v : values) {
    if (v.context()->variables() != ctx.variables()) throw RepError("series values use different variables");
  }
  std::set<Exponents> support;
  for (const auto& v : values) {
    for (const auto& [e, c] : v.terms()) support.insert(e);
  }
  // Constant term first, then graded-lex.
  support.insert(Exponents(ctx.size(), 0));
  std::vector<Exponents> order(support.begin(), support.end());
  std::sort(order.begin(), order.end(), [&ctx](const Exponents& a, const Exponents& b) {
    int da = ctx.weighted_degree(a), db = ctx.weighted_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
  const auto rows = restricted_rows(g, elements);
  for (const auto& e : order) {
    std::vector<Scalar> point;
    for (const auto& v : values) {
      auto it = v.terms().find(e);
      Scalar c = it == v.terms().end() ? Scalar::zero(v.context()->kind()) : it->second;
      if (scale) c = Scalar::from_rational(c.kind(), scale(e)) * c;
      point.push_back(c);
    }
    IntegralityVerdict out;
    out.elements = elements;
    out.coefficient = e;
    out.tested = point;
    out.field_order = field_order_of(g, point);
    out.certificate = lattice_member(point, rows);
    out.integral = out.certificate.member;
    if (!out.integral) return out;
    last = std::move(out);
  }
  last.coefficient.reset();
  return last;
}

std::string IntegralityVerdict::describe(const AbelianGroup& g) const {
  std::ostringstream out;
  out << "integrality over " << g.describe() << " at";
  for (const auto& e : elements) out << " " << g.element_text(e);
  out << ": " << (integral ? "integral" : "non-integral");
  if (coefficient) {
    out << " (coefficient";
    for (int k : *coefficient) out << " " << k;
    out << ")";
  }
  out << "\n";
  if (!tested.empty()) {
    out << "values:";
    for (const auto& v : tested) out << " [" << v.to_string() << "]";
    out << "\n";
  }
  if (integral) {
    out << "coefficients:";
    for (const auto& c : certificate.coefficients) out << " " << c.get_str();
    out << "\n";
  } else {
    out << "dual witness over Q(zeta_" << field_order << "):";
    for (const auto& w : certificate.dual_witness) out << " " << w.get_str();
    out << "\n";
  }
  return out.str();
}

}  // namespace mubg
