#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace mubg {

using BigInt = mpz_class;
using IntVector = std::vector<BigInt>;

// Dense row-major matrix of big integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  std::vector<IntVector> to_rows() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  // (row a, row b) <- (s*a + t*b, u*a + v*b)
  void combine_rows(std::size_t a, std::size_t b, const BigInt& s, const BigInt& t, const BigInt& u,
                    const BigInt& v);
  void combine_cols(std::size_t a, std::size_t b, const BigInt& s, const BigInt& t, const BigInt& u,
                    const BigInt& v);

  IntMatrix transpose() const;
  bool is_zero() const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Smith normal form: left * m * right = diag(d_1, d_2, ...) with d_i | d_{i+1},
// d_i >= 0 and both bases unimodular.
struct SmithForm {
  IntVector diagonal;  // length min(rows, cols)
  IntMatrix left;
  IntMatrix right;
};

SmithForm smith_normal_form(const IntMatrix& m);
// The diagonal only; skips transform bookkeeping.
IntVector smith_invariants(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice: echelon rows with positive
// pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix basis;                  // rank x cols
  std::vector<std::size_t> pivots;  // pivot column of each basis row
  IntMatrix transform;              // transform * m = [basis; 0], rows x rows, unimodular
};

HermiteForm hermite_normal_form(const IntMatrix& m, bool with_transform = false);

}  // namespace mubg
