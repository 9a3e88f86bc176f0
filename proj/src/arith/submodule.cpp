#include "mubg/submodule.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mubg/error.hpp"

namespace mubg {

namespace {

using Row = std::vector<std::int64_t>;

struct Chain {
  std::int64_t p;
  int m;
  std::int64_t n;
  std::vector<std::int64_t> pow;  // p^0 .. p^M

  explicit Chain(const CoeffRing& r) : p(r.p), m(r.power), n(r.modulus()) {
    pow.resize(m + 1);
    pow[0] = 1;
    for (int i = 1; i <= m; ++i) pow[i] = pow[i - 1] * p;
  }
  std::int64_t mod(std::int64_t a) const {
    a %= n;
    return a < 0 ? a + n : a;
  }
  int valuation(std::int64_t a) const {
    if (a == 0) return m;
    int v = 0;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    return v;
  }
  std::int64_t inverse(std::int64_t u) const {
    // u is a unit; extended Euclid.
    std::int64_t a = mod(u), b = n, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (a != 1) throw ArithError("non-unit in Z/p^M inverse");
    return mod(x0);
  }
  // row -= f * src (entries from `start`)
  void axpy(Row& row, const Row& src, std::int64_t f, std::size_t start = 0) const {
    f = mod(f);
    if (f == 0) return;
    for (std::size_t j = start; j < row.size(); ++j) {
      if (src[j] != 0) row[j] = mod(row[j] - f * src[j]);
    }
  }
};

bool row_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; });
}

Row to_row(const IntVector& v, const Chain& c) {
  Row r(v.size());
  BigInt n = c.n;
  for (std::size_t i = 0; i < v.size(); ++i) {
    BigInt x;
    mpz_fdiv_r(x.get_mpz_t(), v[i].get_mpz_t(), n.get_mpz_t());
    r[i] = x.get_si();
  }
  return r;
}

IntVector from_row(const Row& r, std::size_t begin, std::size_t end) {
  IntVector v;
  v.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) v.emplace_back(static_cast<long>(r[i]));
  return v;
}

// Howell form of the given rows (already reduced mod p^M). Returns rows and
// pivot columns; rows are reduced above each pivot into [0, p^v).
void howell(std::vector<Row> pool, std::size_t cols, const Chain& c, std::vector<Row>& out,
            std::vector<std::size_t>& pivots) {
  out.clear();
  pivots.clear();
  pool.erase(std::remove_if(pool.begin(), pool.end(), row_zero), pool.end());
  for (std::size_t col = 0; col < cols && !pool.empty(); ++col) {
    std::size_t best = pool.size();
    int best_v = c.m;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i][col] == 0) continue;
      int v = c.valuation(pool[i][col]);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == pool.size()) continue;
    Row r = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<long>(best));
    std::int64_t unit = r[col] / c.pow[best_v];
    std::int64_t inv = c.inverse(unit);
    for (std::size_t j = col; j < r.size(); ++j) r[j] = c.mod(r[j] * inv);
    for (auto& s : pool) {
      if (s[col] == 0) continue;
      c.axpy(s, r, s[col] / c.pow[best_v], col);
    }
    if (best_v > 0) {
      Row t(r.size());
      for (std::size_t j = col; j < r.size(); ++j) t[j] = c.mod(r[j] * c.pow[c.m - best_v]);
      if (!row_zero(t)) pool.push_back(std::move(t));
    }
    pool.erase(std::remove_if(pool.begin(), pool.end(), row_zero), pool.end());
    out.push_back(std::move(r));
    pivots.push_back(col);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t col = pivots[i];
    const std::int64_t piv = out[i][col];
    for (std::size_t k = 0; k < i; ++k) {
      std::int64_t q = out[k][col] / piv;
      if (q != 0) c.axpy(out[k], out[i], q, col);
    }
  }
}

// Valuations of the Smith diagonal over Z/p^M.
std::vector<int> chain_smith(std::vector<Row> a, std::size_t cols, const Chain& c) {
  std::vector<int> vals;
  a.erase(std::remove_if(a.begin(), a.end(), row_zero), a.end());
  std::size_t k = 0;
  while (k < a.size() && k < cols) {
    std::size_t bi = a.size(), bj = cols;
    int bv = c.m;
    for (std::size_t i = k; i < a.size() && bv > 0; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        int v = c.valuation(a[i][j]);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi == a.size()) break;
    std::swap(a[k], a[bi]);
    if (bj != k)
      for (auto& r : a) std::swap(r[k], r[bj]);
    std::int64_t inv = c.inverse(a[k][k] / c.pow[bv]);
    for (std::size_t j = k; j < cols; ++j) a[k][j] = c.mod(a[k][j] * inv);
    for (std::size_t i = k + 1; i < a.size(); ++i) {
      if (a[i][k] != 0) c.axpy(a[i], a[k], a[i][k] / c.pow[bv], k);
    }
    // Column elimination only touches row k: the rest of column k is zero.
    for (std::size_t j = k + 1; j < cols; ++j) a[k][j] = 0;
    vals.push_back(bv);
    ++k;
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

IntVector sorted_invariants(IntVector torsion, std::size_t free_count, const CoeffRing& ring) {
  std::sort(torsion.begin(), torsion.end());
  for (std::size_t i = 0; i < free_count; ++i) {
    torsion.push_back(ring.is_modular() ? BigInt(static_cast<long>(ring.modulus())) : BigInt(0));
  }
  return torsion;
}

}  // namespace

CoeffRing CoeffRing::modular(int p, int m) {
  if (p < 2 || m < 1) throw ArithError("Z/p^M needs p >= 2 and M >= 1");
  CoeffRing r{p, m};
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
  if (n > BigInt(1L << 30)) throw ArithError("p^M too large for the modular engine");
  return r;
}

std::int64_t CoeffRing::modulus() const {
  if (!is_modular()) throw ArithError("modulus of the integers");
  std::int64_t n = 1;
  for (int i = 0; i < power; ++i) n *= p;
  return n;
}

BigInt CoeffRing::normalize(const BigInt& v) const {
  if (!is_modular()) return v;
  BigInt n = static_cast<long>(modulus()), r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string CoeffRing::to_string() const {
  if (!is_modular()) return "Z";
  return power == 1 ? "Z/" + std::to_string(p) : "Z/" + std::to_string(p) + "^" + std::to_string(power);
}

Submodule::Submodule(CoeffRing ring, std::size_t dim, const std::vector<IntVector>& generators,
                     bool with_transform)
    : ring_(ring), dim_(dim) {
  for (const auto& g : generators) {
    if (g.size() != dim) throw ArithError("submodule generator has wrong length");
  }
  const std::size_t g = generators.size();
  const std::size_t width = with_transform ? dim + g : dim;
  if (ring.is_modular()) {
    Chain c(ring);
    std::vector<Row> pool;
    pool.reserve(g);
    for (std::size_t i = 0; i < g; ++i) {
      Row r = to_row(generators[i], c);
      if (with_transform) {
        r.resize(width, 0);
        r[dim + i] = 1;
      }
      pool.push_back(std::move(r));
    }
    std::vector<Row> out;
    std::vector<std::size_t> piv;
    howell(std::move(pool), dim, c, out, piv);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (piv[i] >= dim) break;
      rows_.push_back(from_row(out[i], 0, dim));
      pivots_.push_back(piv[i]);
      if (with_transform) transform_.push_back(from_row(out[i], dim, width));
    }
    return;
  }
  IntMatrix m(g, dim);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = generators[i][j];
  HermiteForm h = hermite_normal_form(m, with_transform);
  for (std::size_t i = 0; i < h.basis.rows(); ++i) {
    rows_.push_back(h.basis.row(i));
    pivots_.push_back(h.pivots[i]);
    if (with_transform) transform_.push_back(h.transform.row(i));
  }
}

Submodule Submodule::full(CoeffRing ring, std::size_t dim) {
  std::vector<IntVector> gens(dim, IntVector(dim, BigInt(0)));
  for (std::size_t i = 0; i < dim; ++i) gens[i][i] = 1;
  return Submodule(ring, dim, gens);
}

Submodule Submodule::direct_sum(CoeffRing ring, const std::vector<const Submodule*>& parts) {
  Submodule out;
  out.ring_ = ring;
  for (const Submodule* m : parts) {
    if (m->ring_ != ring) throw ArithError("direct_sum: mixed coefficient rings");
    out.dim_ += m->dim_;
  }
  std::size_t off = 0;
  for (const Submodule* m : parts) {
    for (std::size_t i = 0; i < m->rows_.size(); ++i) {
      IntVector wide(out.dim_);
      std::copy(m->rows_[i].begin(), m->rows_[i].end(), wide.begin() + static_cast<long>(off));
      out.rows_.push_back(std::move(wide));
      out.pivots_.push_back(m->pivots_[i] + off);
    }
    off += m->dim_;
  }
  return out;
}

IntVector Submodule::reduce(const IntVector& v) const {
  if (v.size() != dim_) throw ArithError("reduce: vector has wrong length");
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = ring_.normalize(v[i]);
  const BigInt n = ring_.is_modular() ? BigInt(static_cast<long>(ring_.modulus())) : BigInt(0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    if (w[c] == 0) continue;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), w[c].get_mpz_t(), rows_[i][c].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = c; j < dim_; ++j) {
      if (rows_[i][j] == 0) continue;
      w[j] -= q * rows_[i][j];
      if (ring_.is_modular()) mpz_fdiv_r(w[j].get_mpz_t(), w[j].get_mpz_t(), n.get_mpz_t());
    }
  }
  return w;
}

bool Submodule::contains(const IntVector& v) const {
  IntVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; });
}

bool Submodule::contains(const Submodule& other) const {
  if (other.dim_ != dim_ || !(other.ring_ == ring_)) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const IntVector& r) { return contains(r); });
}

std::optional<IntVector> Submodule::coordinates(const IntVector& v) const {
  if (v.size() != dim_) throw ArithError("coordinates: vector has wrong length");
  IntVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = ring_.normalize(v[i]);
  IntVector coeffs(rows_.size(), BigInt(0));
  const BigInt n = ring_.is_modular() ? BigInt(static_cast<long>(ring_.modulus())) : BigInt(0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    if (w[c] == 0) continue;
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), w[c].get_mpz_t(), rows_[i][c].get_mpz_t());
    if (r != 0) return std::nullopt;
    coeffs[i] = q;
    for (std::size_t j = c; j < dim_; ++j) {
      if (rows_[i][j] == 0) continue;
      w[j] -= q * rows_[i][j];
      if (ring_.is_modular()) mpz_fdiv_r(w[j].get_mpz_t(), w[j].get_mpz_t(), n.get_mpz_t());
    }
  }
  if (!std::all_of(w.begin(), w.end(), [](const BigInt& x) { return x == 0; })) return std::nullopt;
  return coeffs;
}

std::optional<IntVector> Submodule::generator_coordinates(const IntVector& v) const {
  if (transform_.size() != rows_.size()) throw ArithError("submodule built without transform");
  auto c = coordinates(v);
  if (!c) return std::nullopt;
  const std::size_t g = transform_.empty() ? 0 : transform_[0].size();
  IntVector out(g, BigInt(0));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if ((*c)[i] == 0) continue;
    for (std::size_t k = 0; k < g; ++k) out[k] += (*c)[i] * transform_[i][k];
  }
  for (auto& x : out) x = ring_.normalize(x);
  return out;
}

Submodule Submodule::sum(const Submodule& other) const {
  if (other.dim_ != dim_ || !(other.ring_ == ring_)) throw ArithError("sum of incompatible submodules");
  std::vector<IntVector> gens = rows_;
  gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
  return Submodule(ring_, dim_, gens);
}

Submodule Submodule::image(const std::vector<IntVector>& map, std::size_t target_dim) const {
  if (map.size() != dim_) throw ArithError("image: map has wrong number of rows");
  std::vector<IntVector> gens;
  gens.reserve(rows_.size());
  for (const auto& r : rows_) {
    IntVector out(target_dim, BigInt(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (r[i] == 0) continue;
      if (map[i].size() != target_dim) throw ArithError("image: map row has wrong length");
      for (std::size_t j = 0; j < target_dim; ++j) out[j] += r[i] * map[i][j];
    }
    gens.push_back(std::move(out));
  }
  return Submodule(ring_, target_dim, gens);
}

Submodule Submodule::preimage(const std::vector<IntVector>& map, const Submodule& target) {
  const std::size_t s = map.size();
  const std::size_t m = target.dim_;
  const CoeffRing ring = target.ring_;
  std::vector<IntVector> stacked;
  stacked.reserve(s + target.rows_.size());
  for (std::size_t i = 0; i < s; ++i) {
    if (map[i].size() != m) throw ArithError("preimage: map row has wrong length");
    IntVector r(m + s, BigInt(0));
    for (std::size_t j = 0; j < m; ++j) r[j] = map[i][j];
    r[m + i] = 1;
    stacked.push_back(std::move(r));
  }
  for (const auto& t : target.rows_) {
    IntVector r(m + s, BigInt(0));
    for (std::size_t j = 0; j < m; ++j) r[j] = t[j];
    stacked.push_back(std::move(r));
  }
  Submodule echelon(ring, m + s, stacked);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < echelon.rows_.size(); ++i) {
    if (echelon.pivots_[i] < m) continue;
    gens.emplace_back(echelon.rows_[i].begin() + static_cast<long>(m), echelon.rows_[i].end());
  }
  return Submodule(ring, s, gens);
}

IntVector Submodule::quotient_invariants(const Submodule& sub) const {
  if (!contains(sub)) throw ArithError("quotient_invariants: not a submodule");
  // Presentation R^r -> this with relation module {c : c * rows in sub}.
  Submodule rel = preimage(rows_, sub);
  const std::size_t r = rows_.size();
  if (ring_.is_modular()) {
    Chain c(ring_);
    std::vector<Row> a;
    for (const auto& row : rel.rows_) a.push_back(to_row(row, c));
    std::vector<int> vals = chain_smith(std::move(a), r, c);
    IntVector torsion;
    for (int v : vals) {
      if (v > 0) torsion.emplace_back(static_cast<long>(c.pow[v]));
    }
    return sorted_invariants(torsion, r - vals.size(), ring_);
  }
  IntMatrix m(rel.rows_.size(), r);
  for (std::size_t i = 0; i < rel.rows_.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) m(i, j) = rel.rows_[i][j];
  IntVector diag = smith_invariants(m);
  IntVector torsion;
  std::size_t rank = 0;
  for (const auto& d : diag) {
    if (d == 0) continue;
    ++rank;
    if (d != 1) torsion.push_back(d);
  }
  return sorted_invariants(torsion, r - rank, ring_);
}

IntVector Submodule::cokernel_invariants() const {
  return Submodule::full(ring_, dim_).quotient_invariants(*this);
}

ModularSmith modular_smith(const std::vector<IntVector>& rows, std::size_t cols, const CoeffRing& ring) {
  if (!ring.is_modular()) throw ArithError("modular_smith over the integers");
  Chain c(ring);
  std::vector<Row> a;
  for (const auto& r : rows) {
    if (r.size() != cols) throw ArithError("modular_smith: row has wrong length");
    a.push_back(to_row(r, c));
  }
  return {chain_smith(std::move(a), cols, c)};
}

std::string format_invariants(const IntVector& invariants) {
  if (invariants.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) out << " + ";
    if (invariants[i] == 0)
      out << "Z";
    else
      out << "Z/" << invariants[i].get_str();
  }
  return out.str();
}

}  // namespace mubg
