#include <algorithm>
#include <numeric>

#include "mubg/bclass.hpp"
#include "mubg/error.hpp"

namespace mubg {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<std::string> variable_names(int n) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(n <= 4 ? small[i] : "x" + std::to_string(i + 1));
  return out;
}

// The same law at a larger power bound, when it can be rebuilt.
FormalGroupLaw widen(const FormalGroupLaw& f, int degree) {
  if (f.degree() >= degree) return f;
  switch (f.kind()) {
    case FglKind::additive: return make_additive(degree);
    case FglKind::multiplicative:
      if (f.parameters().size() == 1) return make_multiplicative(degree);
      break;
    case FglKind::universal: return make_universal(static_cast<int>(f.parameters().size()), degree);
    case FglKind::user: break;
  }
  throw BclassError("window needs the FGL up to power " + std::to_string(degree) + ", table has " +
                    std::to_string(f.degree()));
}

}  // namespace

std::optional<std::size_t> ModelBlock::find(const Exponents& e) const {
  auto it = index.find(e);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

QuotientModel::QuotientModel(const FormalGroupLaw& f, int p, int n, unsigned inverted, Window window,
                             CoeffRing ring, std::size_t size_cap)
    : fgl_(f), p_(p), n_(n), inverted_(inverted), window_(window), ring_(ring), size_cap_(size_cap) {
  if (!is_prime(p)) throw BclassError("p must be prime, got " + std::to_string(p));
  if (n < 1 || n > 16) throw BclassError("variable count must be in [1, 16]");
  if (inverted >= (1u << n)) throw BclassError("inverted set refers to a missing variable");
  if (window.floor > 0) throw BclassError("window floor must be <= 0");
  if (window.ceiling < 2) throw BclassError("window too small to express the p-series relation (D < 2)");
  if (ring.is_modular() && ring.p != p) throw BclassError("coefficient ring Z/" + std::to_string(ring.p) +
                                                          "^M does not match p = " + std::to_string(p));
  names_ = variable_names(n);
  grading_.assign(static_cast<std::size_t>(n), 2);
  for (const auto& par : f.parameters()) {
    if (par.internal_degree >= 0) throw BclassError("parameter " + par.name + " must have negative degree");
    names_.push_back(par.name);
    grading_.push_back(par.internal_degree);
  }
  if (!f.scalar_kind().contains_rationals() && f.scalar_kind().tag != ScalarTag::integer) {
    throw BclassError("FGL coefficients must be integers");
  }
  // Highest power of [p](x_v) that can meet the window.
  const int top = window.ceiling / 2 - n * window.floor + 1;
  FormalGroupLaw wide = widen(f, top);
  TruncSeries ps = n_series(wide, p);
  const std::size_t np = f.parameters().size();
  std::map<int, Poly> by_power;
  for (const auto& [e, c] : ps.terms()) {
    if (e[0] > top) continue;
    auto z = c.as_integer();
    if (!z) throw BclassError("p-series has a non-integral coefficient " + c.to_string());
    int deg = 2 * e[0];
    for (std::size_t i = 0; i < np; ++i) deg += f.parameters()[i].internal_degree * e[1 + i];
    if (deg != 2) throw BclassError("FGL is not graded: p-series term of internal degree " + std::to_string(deg));
    Exponents key(e.begin() + 1, e.end());
    by_power[e[0]][key] = *z;
  }
  for (auto& [a, poly] : by_power) pseries_.emplace_back(a, std::move(poly));
}

int QuotientModel::internal_degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += grading_[i] * e[i];
  return d;
}

Poly QuotientModel::p_series_in(int v) const {
  Poly out;
  for (const auto& [a, coeff] : pseries_) {
    for (const auto& [pe, c] : coeff) {
      Exponents e(arity(), 0);
      e[static_cast<std::size_t>(v)] = a;
      std::copy(pe.begin(), pe.end(), e.begin() + n_);
      out[e] = c;
    }
  }
  return out;
}

Poly QuotientModel::p_series_over_x(int v) const {
  Poly out;
  for (const auto& [e, c] : p_series_in(v)) {
    Exponents d = e;
    d[static_cast<std::size_t>(v)] -= 1;
    out[d] = c;
  }
  return out;
}

Poly QuotientModel::p_series_coefficient(int j) const {
  Poly out;
  for (const auto& [a, coeff] : pseries_) {
    if (a != j) continue;
    for (const auto& [pe, c] : coeff) {
      Exponents e(arity(), 0);
      std::copy(pe.begin(), pe.end(), e.begin() + n_);
      out[e] = c;
    }
  }
  return out;
}

std::vector<int> QuotientModel::default_degrees() const {
  std::vector<int> out;
  for (int d = 2 * n_ * window_.floor; d <= window_.ceiling; d += 2) out.push_back(d);
  return out;
}

template <class Fn>
void QuotientModel::enumerate(const std::vector<int>& floors, int ceiling, int degree, Fn&& fn) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t np = arity() - n;
  const int budget = ceiling / 2;
  const int floor_sum = std::accumulate(floors.begin(), floors.end(), 0);
  if (floor_sum > budget) return;
  Exponents e(arity(), 0);
  std::vector<int> weights;
  for (std::size_t i = 0; i < np; ++i) weights.push_back(-grading_[n + i]);

  // Parameter exponents with sum weights_i * j_i = target.
  auto params = [&](auto&& self, std::size_t i, int target) -> void {
    if (i == np) {
      if (target == 0) fn(e);
      return;
    }
    if (i + 1 == np) {
      if (target % weights[i] == 0) {
        e[n + i] = target / weights[i];
        fn(e);
        e[n + i] = 0;
      }
      return;
    }
    for (int j = 0; j * weights[i] <= target; ++j) {
      e[n + i] = j;
      self(self, i + 1, target - j * weights[i]);
    }
    e[n + i] = 0;
  };
  auto xs = [&](auto&& self, std::size_t u, int used, int rest_floor) -> void {
    if (u == n) {
      int target = 2 * used - degree;
      if (target < 0) return;
      if (np == 0) {
        if (target == 0) fn(e);
        return;
      }
      params(params, 0, target);
      return;
    }
    const int rest = rest_floor - floors[u];
    for (int k = floors[u]; used + k + rest <= budget; ++k) {
      e[u] = k;
      self(self, u + 1, used + k, rest);
    }
    e[u] = 0;
  };
  xs(xs, 0, 0, floor_sum);
}

std::vector<Exponents> QuotientModel::parameter_monomials(int degree) const {
  std::vector<Exponents> out;
  enumerate(std::vector<int>(static_cast<std::size_t>(n_), 0), 0, degree,
            [&](const Exponents& e) { out.push_back(e); });
  return out;
}

bool QuotientModel::in_window(const Exponents& e) const {
  if (e.size() != arity()) return false;
  int sum = 0;
  for (int u = 0; u < n_; ++u) {
    if (e[static_cast<std::size_t>(u)] < (is_inverted(u) ? window_.floor : 0)) return false;
    sum += e[static_cast<std::size_t>(u)];
  }
  for (std::size_t i = static_cast<std::size_t>(n_); i < e.size(); ++i) {
    if (e[i] < 0) return false;
  }
  return 2 * sum <= window_.ceiling;
}

ModelBlock QuotientModel::block(int degree, bool with_relations) const {
  ModelBlock b;
  b.degree = degree;
  std::vector<int> floors(static_cast<std::size_t>(n_));
  for (int u = 0; u < n_; ++u) floors[static_cast<std::size_t>(u)] = is_inverted(u) ? window_.floor : 0;
  enumerate(floors, window_.ceiling, degree, [&](const Exponents& e) {
    b.monomials.push_back(e);
    if (b.monomials.size() > size_cap_) {
      throw BclassError("basis in degree " + std::to_string(degree) + " exceeds the size cap " +
                        std::to_string(size_cap_));
    }
  });
  const std::size_t n = static_cast<std::size_t>(n_);
  std::sort(b.monomials.begin(), b.monomials.end(), [n](const Exponents& a, const Exponents& c) {
    int sa = std::accumulate(a.begin(), a.begin() + static_cast<long>(n), 0);
    int sc = std::accumulate(c.begin(), c.begin() + static_cast<long>(n), 0);
    if (sa != sc) return sa < sc;
    return a < c;
  });
  for (std::size_t i = 0; i < b.monomials.size(); ++i) b.index.emplace(b.monomials[i], i);
  if (!with_relations) {
    b.relations = Submodule::zero(ring_, b.size());
    return b;
  }

  for (int v = 0; v < n_; ++v) {
    std::vector<int> gfloors = floors;
    if (is_inverted(v)) gfloors[static_cast<std::size_t>(v)] = window_.floor - 1;
    enumerate(gfloors, window_.ceiling - 2, degree - 2, [&](const Exponents& g) {
      IntVector row(b.size());
      bool nonzero = false;
      for (const auto& [a, coeff] : pseries_) {
        for (const auto& [pe, c] : coeff) {
          Exponents e = g;
          e[static_cast<std::size_t>(v)] += a;
          for (std::size_t i = 0; i < pe.size(); ++i) e[n + i] += pe[i];
          auto idx = b.find(e);
          if (!idx) continue;  // beyond the ceiling
          row[*idx] += c;
          nonzero = true;
        }
      }
      if (!nonzero) return;
      if (ring_.is_modular()) {
        for (auto& x : row) x = ring_.normalize(x);
      }
      b.relation_rows.push_back(std::move(row));
    });
  }
  b.relations = Submodule(ring_, b.size(), b.relation_rows);
  return b;
}

Poly QuotientModel::multiply(const Poly& a, const Poly& b) const {
  Poly out;
  Exponents e(arity());
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      int sum = 0;
      for (int u = 0; u < n_; ++u) sum += e[static_cast<std::size_t>(u)];
      if (2 * sum > window_.ceiling) continue;
      auto [it, inserted] = out.try_emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

IntVector QuotientModel::to_vector(const Poly& a, const ModelBlock& block) const {
  IntVector v(block.size());
  for (const auto& [e, c] : a) {
    auto idx = block.find(e);
    if (!idx) throw BclassError("monomial outside the degree " + std::to_string(block.degree) + " basis");
    v[*idx] += c;
  }
  if (ring_.is_modular()) {
    for (auto& x : v) x = ring_.normalize(x);
  }
  return v;
}

Poly QuotientModel::to_poly(const IntVector& v, const ModelBlock& block) const {
  Poly out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out[block.monomials[i]] = v[i];
  }
  return out;
}

std::string QuotientModel::render(const Poly& a) const {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < arity(); ++i) {
    int low = 0;
    for (const auto& [e, c] : a) low = std::min(low, e[i]);
    vars.push_back({names_[i], i < static_cast<std::size_t>(n_) ? 1 : 0, low, {}});
  }
  int top = 0;
  for (const auto& [e, c] : a) {
    int s = 0;
    for (int u = 0; u < n_; ++u) s += e[static_cast<std::size_t>(u)];
    top = std::max(top, s);
  }
  auto ctx = SeriesContext::make(vars, top, ScalarKind::integer());
  TruncSeries s(ctx);
  for (const auto& [e, c] : a) s.add_term(e, Scalar(c));
  return to_text(s);
}

QuotientModel QuotientModel::with_inverted(unsigned inverted) const {
  return QuotientModel(fgl_, p_, n_, inverted, window_, ring_, size_cap_);
}

std::string QuotientModel::describe() const {
  std::string inv;
  for (int u = 0; u < n_; ++u) {
    if (is_inverted(u)) inv += (inv.empty() ? "" : ",") + names_[static_cast<std::size_t>(u)];
  }
  return fgl_.label() + " p=" + std::to_string(p_) + " n=" + std::to_string(n_) + " inverted={" + inv +
         "} window=[" + std::to_string(window_.floor) + "," + std::to_string(window_.ceiling) + "] over " +
         ring_.to_string();
}

std::vector<IntVector> localization_map(const QuotientModel& src, const ModelBlock& src_block,
                                        const QuotientModel& dst, const ModelBlock& dst_block) {
  if ((src.inverted() & ~dst.inverted()) != 0) throw BclassError("localization must enlarge the inverted set");
  if (src.prime() != dst.prime() || src.variables() != dst.variables() || !(src.window() == dst.window()) ||
      !(src.ring() == dst.ring()) || src.fgl().label() != dst.fgl().label() || src_block.degree != dst_block.degree) {
    throw BclassError("localization between incompatible models");
  }
  std::vector<IntVector> rows;
  rows.reserve(src_block.size());
  for (const auto& e : src_block.monomials) {
    IntVector r(dst_block.size());
    auto idx = dst_block.find(e);
    if (!idx) throw BclassError("monomial missing in the localized basis");
    r[*idx] = 1;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<IntVector> localization_map(const QuotientModel& src, const QuotientModel& dst, int degree) {
  return localization_map(src, src.block(degree), dst, dst.block(degree));
}

std::vector<IntVector> compose_maps(const std::vector<IntVector>& first, const std::vector<IntVector>& second,
                                    std::size_t target_dim, const CoeffRing& ring) {
  std::vector<IntVector> out;
  out.reserve(first.size());
  for (const auto& row : first) {
    if (row.size() != second.size()) throw BclassError("compose_maps: shape mismatch");
    IntVector r(target_dim);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] == 0) continue;
      for (std::size_t j = 0; j < target_dim; ++j) {
        if (second[k][j] != 0) r[j] += row[k] * second[k][j];
      }
    }
    if (ring.is_modular()) {
      for (auto& x : r) x = ring.normalize(x);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mubg
