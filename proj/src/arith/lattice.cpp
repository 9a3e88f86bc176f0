#include "mubg/lattice.hpp"

#include <numeric>

#include "mubg/error.hpp"

namespace mubg {

namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

// Solve g * y = rhs for square invertible rational g.
RationalVector solve(std::vector<RationalVector> g, RationalVector rhs) {
  const std::size_t n = g.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && g[p][c] == 0) ++p;
    if (p == n) throw ArithError("singular Gram matrix in lattice certificate");
    std::swap(g[c], g[p]);
    std::swap(rhs[c], rhs[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || g[i][c] == 0) continue;
      Rational f = g[i][c] / g[c][c];
      for (std::size_t j = c; j < n; ++j) g[i][j] -= f * g[c][j];
      rhs[i] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= g[i][i];
  return rhs;
}

}  // namespace

bool LatticeCertificate::verify(const RationalVector& v,
                                const std::vector<RationalVector>& rows) const {
  if (member) {
    if (coefficients.size() != rows.size()) return false;
    RationalVector sum(v.size(), Rational(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) sum[j] += Rational(coefficients[i]) * rows[i][j];
    return sum == v;
  }
  if (dual_witness.size() != v.size()) return false;
  for (const auto& r : rows) {
    if (!is_integral(dot(dual_witness, r))) return false;
  }
  return !is_integral(dot(dual_witness, v));
}

LatticeCertificate lattice_member(const RationalVector& v, const std::vector<RationalVector>& rows) {
  const std::size_t n = v.size();
  for (const auto& r : rows) {
    if (r.size() != n) throw ArithError("lattice_member: dimension mismatch");
  }
  // Scale by the lcm of the row denominators so the lattice is integral.
  BigInt d = 1;
  for (const auto& r : rows)
    for (const auto& q : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());

  LatticeCertificate cert;
  RationalVector scaled(n);
  for (std::size_t j = 0; j < n; ++j) {
    scaled[j] = v[j] * Rational(d);
    scaled[j].canonicalize();
    if (!is_integral(scaled[j])) {
      cert.dual_witness.assign(n, Rational(0));
      cert.dual_witness[j] = Rational(d);
      return cert;
    }
  }

  IntMatrix b(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational q = rows[i][j] * Rational(d);
      q.canonicalize();
      b(i, j) = q.get_num();
    }
  HermiteForm hnf = hermite_normal_form(b, true);
  const std::size_t rank = hnf.basis.rows();

  // Rational coordinates of v against the echelon basis, then the residual.
  RationalVector x(rank, Rational(0));
  RationalVector residual = scaled;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::size_t c = hnf.pivots[i];
    x[i] = residual[c] / Rational(hnf.basis(i, c));
    for (std::size_t j = 0; j < n; ++j) residual[j] -= x[i] * Rational(hnf.basis(i, j));
  }
  bool in_span = true;
  for (const auto& r : residual) in_span = in_span && r == 0;

  std::vector<RationalVector> h(rank, RationalVector(n));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = Rational(hnf.basis(i, j));

  if (in_span) {
    std::size_t bad = rank;
    for (std::size_t i = 0; i < rank && bad == rank; ++i) {
      if (!is_integral(x[i])) bad = i;
    }
    if (bad == rank) {
      cert.member = true;
      cert.coefficients.assign(rows.size(), BigInt(0));
      for (std::size_t i = 0; i < rank; ++i) {
        BigInt xi = x[i].get_num();
        for (std::size_t k = 0; k < rows.size(); ++k) cert.coefficients[k] += xi * hnf.transform(i, k);
      }
      return cert;
    }
    // Dual basis vector to h[bad] inside the row space.
    std::vector<RationalVector> gram(rank, RationalVector(rank));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t k = 0; k < rank; ++k) gram[i][k] = dot(h[i], h[k]);
    RationalVector e(rank, Rational(0));
    e[bad] = 1;
    RationalVector y = solve(gram, e);
    RationalVector w(n, Rational(0));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < n; ++j) w[j] += y[i] * h[i][j];
    for (auto& c : w) c *= Rational(d);
    cert.dual_witness = std::move(w);
    return cert;
  }

  // Outside the rational span: subtract the orthogonal projection.
  RationalVector w = scaled;
  if (rank > 0) {
    std::vector<RationalVector> gram(rank, RationalVector(rank));
    RationalVector rhs(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t k = 0; k < rank; ++k) gram[i][k] = dot(h[i], h[k]);
      rhs[i] = dot(h[i], scaled);
    }
    RationalVector y = solve(gram, rhs);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < n; ++j) w[j] -= y[i] * h[i][j];
  }
  Rational norm = dot(w, scaled);
  for (auto& c : w) c = c / (Rational(2) * norm) * Rational(d);
  cert.dual_witness = std::move(w);
  return cert;
}

LatticeCertificate lattice_member(const RationalVector& v, const IntMatrix& rows) {
  std::vector<RationalVector> r(rows.rows(), RationalVector(rows.cols()));
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) r[i][j] = Rational(rows(i, j));
  return lattice_member(v, r);
}

RationalVector flatten(const std::vector<Scalar>& v, int n) {
  RationalVector out;
  out.reserve(v.size() * static_cast<std::size_t>(euler_phi(n)));
  for (const auto& s : v) {
    auto c = s.flatten(n);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

FlatLattice flatten_lattice(const std::vector<Scalar>& v, const std::vector<std::vector<Scalar>>& rows) {
  int order = 1;
  auto absorb = [&order](const Scalar& s) {
    if (s.kind().tag == ScalarTag::cyclotomic) order = std::lcm(order, s.kind().order);
    if (s.kind().tag == ScalarTag::modular) throw ArithError("lattice test over residues");
  };
  for (const auto& s : v) absorb(s);
  for (const auto& r : rows) {
    if (r.size() != v.size()) throw ArithError("lattice_member: dimension mismatch");
    for (const auto& s : r) absorb(s);
  }
  FlatLattice out;
  out.order = order;
  out.vector = flatten(v, order);
  for (const auto& r : rows) out.rows.push_back(flatten(r, order));
  return out;
}

LatticeCertificate lattice_member(const std::vector<Scalar>& v,
                                  const std::vector<std::vector<Scalar>>& rows) {
  FlatLattice flat = flatten_lattice(v, rows);
  return lattice_member(flat.vector, flat.rows);
}

}  // namespace mubg
