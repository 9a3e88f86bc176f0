#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mubg/lattice.hpp"
#include "mubg/series.hpp"

namespace mubg {

using Element = std::vector<int>;

// Z/n_1 x ... x Z/n_r. The trivial group has no factors.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int> orders);
  static AbelianGroup cyclic(int n) { return AbelianGroup({n}); }

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  int exponent() const { return exponent_; }
  long size() const;

  // All elements in lexicographic order.
  std::vector<Element> elements() const;
  std::vector<Element> nonidentity_elements() const;
  bool contains(const Element& g) const;
  bool is_identity(const Element& g) const;
  int order_of(const Element& g) const;
  Element add(const Element& a, const Element& b) const;
  Element multiple(const Element& g, long k) const;
  // Parses "1,0" style element text.
  Element parse_element(const std::string& text) const;
  std::string element_text(const Element& g) const;
  std::string describe() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<int> orders_;
  int exponent_ = 1;
};

// chi_j(k) = zeta_e^{sum j_i k_i e / n_i}, values in Q(zeta_e).
struct Character {
  Element index;
  std::vector<Scalar> values;  // over group.elements()
};

std::vector<Character> irreducible_characters(const AbelianGroup& g);
Scalar character_value(const AbelianGroup& g, const Element& j, const Element& k);
// (1/|G|) sum chi_a(g) conj(chi_b(g)).
Scalar inner_product(const AbelianGroup& g, const Character& a, const Character& b);
// Rows of the table in the cyclotomic text format.
std::string character_table(const AbelianGroup& g);

// H = <g>, cyclic of order ord(g). chi_j restricted to H is the character
// m -> zeta_ord^{c_j m} of H.
struct CyclicRestriction {
  Element generator;
  int order = 1;
  AbelianGroup subgroup;
  std::vector<int> restricted;  // c_j for each irreducible of G, in table order

  int restrict_character(const AbelianGroup& g, const Element& j) const;
};

CyclicRestriction restrict_to_cyclic(const AbelianGroup& g, const Element& generator);

struct IntegralityVerdict {
  bool integral = false;
  std::optional<Exponents> coefficient;  // first non-integral coefficient of series values
  std::vector<Element> elements;
  std::vector<Scalar> tested;  // scalar vector tested at `coefficient`
  LatticeCertificate certificate;
  int field_order = 1;

  std::string describe(const AbelianGroup& g) const;
};

// Is the vector of values at `elements` the restriction of a virtual
// character of G?
IntegralityVerdict integrality_test(const AbelianGroup& g, const std::vector<Element>& elements,
                                    const std::vector<Scalar>& values);
// Coefficientwise over series values with the same variables (coefficient
// fields may differ per element); coefficients are visited in graded-lex
// order and optionally multiplied by scale(e).
IntegralityVerdict integrality_test(const AbelianGroup& g, const std::vector<Element>& elements,
                                    const std::vector<TruncSeries>& values,
                                    const std::function<Rational(const Exponents&)>& scale = {});

}  // namespace mubg
