#include <algorithm>

#include "mubg/int_matrix.hpp"

namespace mubg {

namespace {

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

struct Gcd {
  BigInt g, s, t;
};

Gcd gcdext(const BigInt& a, const BigInt& b) {
  Gcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

SmithForm smith_impl(const IntMatrix& m, bool track) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = track ? IntMatrix::identity(rows) : IntMatrix();
  IntMatrix right = track ? IntMatrix::identity(cols) : IntMatrix();
  const std::size_t n = std::min(rows, cols);

  for (std::size_t t = 0; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t;
    std::size_t pj = t;
    BigInt best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        BigInt mag = abs(a(i, j));
        if (!found || mag < best) {
          best = mag;
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) break;
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    if (track) {
      left.swap_rows(t, pi);
      right.swap_cols(t, pj);
    }

    bool done = false;
    while (!done) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        BigInt p = a(t, t);
        BigInt b = a(i, t);
        if (b % p == 0) {
          BigInt q = -(b / p);
          a.add_row_multiple(i, t, q);
          if (track) left.add_row_multiple(i, t, q);
        } else {
          auto [g, s, u] = gcdext(p, b);
          BigInt x = -(b / g);
          BigInt y = p / g;
          a.combine_rows(t, i, s, u, x, y);
          if (track) left.combine_rows(t, i, s, u, x, y);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        BigInt p = a(t, t);
        BigInt b = a(t, j);
        if (b % p == 0) {
          BigInt q = -(b / p);
          a.add_col_multiple(j, t, q);
          if (track) right.add_col_multiple(j, t, q);
        } else {
          auto [g, s, u] = gcdext(p, b);
          BigInt x = -(b / g);
          BigInt y = p / g;
          a.combine_cols(t, j, s, u, x, y);
          if (track) right.combine_cols(t, j, s, u, x, y);
        }
      }
      done = true;
      for (std::size_t i = t + 1; i < rows && done; ++i) done = a(i, t) == 0;
      if (!done) continue;
      // Enforce d_t | every later entry.
      for (std::size_t i = t + 1; i < rows && done; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            if (track) left.add_row_multiple(t, i, 1);
            done = false;
            break;
          }
        }
      }
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      if (track) negate_row(left, t);
    }
  }

  SmithForm out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) { return smith_impl(m, true); }

IntVector smith_invariants(const IntMatrix& m) { return smith_impl(m, false).diagonal; }

}  // namespace mubg
