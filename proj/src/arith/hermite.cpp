#include "mubg/int_matrix.hpp"

namespace mubg {

HermiteForm hermite_normal_form(const IntMatrix& m, bool with_transform) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = with_transform ? IntMatrix::identity(rows) : IntMatrix();
  std::vector<std::size_t> pivots;

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t k = row;
    while (k < rows && a(k, col) == 0) ++k;
    if (k == rows) continue;
    a.swap_rows(row, k);
    if (with_transform) u.swap_rows(row, k);

    for (std::size_t i = row + 1; i < rows; ++i) {
      if (a(i, col) == 0) continue;
      BigInt p = a(row, col);
      BigInt b = a(i, col);
      if (b % p == 0) {
        BigInt q = -(b / p);
        a.add_row_multiple(i, row, q);
        if (with_transform) u.add_row_multiple(i, row, q);
      } else {
        BigInt g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), b.get_mpz_t());
        BigInt x = -(b / g);
        BigInt y = p / g;
        a.combine_rows(row, i, s, t, x, y);
        if (with_transform) u.combine_rows(row, i, s, t, x, y);
      }
    }
    if (a(row, col) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(row, j) = -a(row, j);
      if (with_transform) {
        for (std::size_t j = 0; j < rows; ++j) u(row, j) = -u(row, j);
      }
    }
    for (std::size_t i = 0; i < row; ++i) {
      if (a(i, col) == 0) continue;
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      if (q == 0) continue;
      q = -q;
      a.add_row_multiple(i, row, q);
      if (with_transform) u.add_row_multiple(i, row, q);
    }
    pivots.push_back(col);
    ++row;
  }

  HermiteForm out;
  out.basis = IntMatrix(row, cols);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.basis(i, j) = a(i, j);
  out.pivots = std::move(pivots);
  out.transform = std::move(u);
  return out;
}

}  // namespace mubg
