#include <numeric>
#include <sstream>

#include "mubg/error.hpp"
#include "mubg/rep.hpp"

namespace mubg {

AbelianGroup::AbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
  for (int n : orders_) {
    if (n < 2) throw RepError("cyclic factor orders must be >= 2");
    exponent_ = std::lcm(exponent_, n);
  }
}

long AbelianGroup::size() const {
  long s = 1;
  for (int n : orders_) s *= n;
  return s;
}

std::vector<Element> AbelianGroup::elements() const {
  std::vector<Element> out;
  Element e(orders_.size(), 0);
  while (true) {
    out.push_back(e);
    std::size_t i = orders_.size();
    while (i > 0) {
      --i;
      if (++e[i] < orders_[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (orders_.empty()) return out;
  }
}

std::vector<Element> AbelianGroup::nonidentity_elements() const {
  auto all = elements();
  all.erase(all.begin());
  return all;
}

bool AbelianGroup::contains(const Element& g) const {
  if (g.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0 || g[i] >= orders_[i]) return false;
  }
  return true;
}

bool AbelianGroup::is_identity(const Element& g) const {
  for (int k : g) {
    if (k != 0) return false;
  }
  return true;
}

int AbelianGroup::order_of(const Element& g) const {
  if (!contains(g)) throw RepError("element " + element_text(g) + " not in " + describe());
  int ord = 1;
  for (std::size_t i = 0; i < g.size(); ++i) ord = std::lcm(ord, orders_[i] / std::gcd(orders_[i], g[i]));
  return ord;
}

Element AbelianGroup::add(const Element& a, const Element& b) const {
  Element out(orders_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] + b[i]) % orders_[i];
  return out;
}

Element AbelianGroup::multiple(const Element& g, long k) const {
  Element out(orders_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    long v = (g[i] * k) % orders_[i];
    out[i] = static_cast<int>(v < 0 ? v + orders_[i] : v);
  }
  return out;
}

Element AbelianGroup::parse_element(const std::string& text) const {
  Element out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw RepError("bad element entry '" + item + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw RepError("bad element entry '" + item + "'");
    }
  }
  if (!contains(out)) throw RepError("element " + text + " not in " + describe());
  return out;
}

std::string AbelianGroup::element_text(const Element& g) const {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + std::to_string(g[i]);
  return "(" + out + ")";
}

std::string AbelianGroup::describe() const {
  if (orders_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < orders_.size(); ++i) out += (i ? " x " : "") + ("Z/" + std::to_string(orders_[i]));
  return out;
}

Scalar character_value(const AbelianGroup& g, const Element& j, const Element& k) {
  const int e = g.exponent();
  long t = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) t += static_cast<long>(j[i]) * k[i] * (e / g.orders()[i]);
  return Scalar::zeta(e, t % e);
}

std::vector<Character> irreducible_characters(const AbelianGroup& g) {
  std::vector<Character> out;
  const auto elems = g.elements();
  for (const auto& j : elems) {
    Character c{j, {}};
    for (const auto& k : elems) c.values.push_back(character_value(g, j, k));
    out.push_back(std::move(c));
  }
  return out;
}

Scalar inner_product(const AbelianGroup& g, const Character& a, const Character& b) {
  const int e = g.exponent();
  Scalar sum = Scalar::zero(ScalarKind::cyclotomic(e));
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i].conj(e - 1);
  return Scalar::from_rational(ScalarKind::cyclotomic(e), Rational(1, g.size())) * sum;
}

std::string character_table(const AbelianGroup& g) {
  std::ostringstream out;
  out << "character table of " << g.describe() << " over Q(zeta_" << g.exponent() << ")\n";
  out << "elements:";
  for (const auto& k : g.elements()) out << " " << g.element_text(k);
  out << "\n";
  for (const auto& c : irreducible_characters(g)) {
    out << "chi" << g.element_text(c.index) << ":";
    for (const auto& v : c.values) out << " [" << v.to_string() << "]";
    out << "\n";
  }
  return out.str();
}

int CyclicRestriction::restrict_character(const AbelianGroup& g, const Element& j) const {
  const int e = g.exponent();
  long t = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) t += static_cast<long>(j[i]) * generator[i] * (e / g.orders()[i]);
  // zeta_e^t = zeta_ord^{t ord / e}
  t %= e;
  return static_cast<int>((t * order / e) % order);
}

CyclicRestriction restrict_to_cyclic(const AbelianGroup& g, const Element& generator) {
  CyclicRestriction r;
  r.generator = generator;
  r.order = g.order_of(generator);
  r.subgroup = r.order == 1 ? AbelianGroup() : AbelianGroup::cyclic(r.order);
  for (const auto& j : g.elements()) r.restricted.push_back(r.restrict_character(g, j));
  return r;
}

}  // namespace mubg
