#include "mubg/int_matrix.hpp"

#include <fmt/format.h>

#include "mubg/error.hpp"

namespace mubg {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ArithError("IntMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<IntVector> IntMatrix::to_rows() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    if ((*this)(src, j) != 0) (*this)(dst, j) += factor * (*this)(src, j);
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    if ((*this)(i, src) != 0) (*this)(i, dst) += factor * (*this)(i, src);
  }
}

void IntMatrix::combine_rows(std::size_t a, std::size_t b, const BigInt& s, const BigInt& t,
                             const BigInt& u, const BigInt& v) {
  for (std::size_t j = 0; j < cols_; ++j) {
    BigInt x = (*this)(a, j);
    BigInt y = (*this)(b, j);
    if (x == 0 && y == 0) continue;
    (*this)(a, j) = s * x + t * y;
    (*this)(b, j) = u * x + v * y;
  }
}

void IntMatrix::combine_cols(std::size_t a, std::size_t b, const BigInt& s, const BigInt& t,
                             const BigInt& u, const BigInt& v) {
  for (std::size_t i = 0; i < rows_; ++i) {
    BigInt x = (*this)(i, a);
    BigInt y = (*this)(i, b);
    if (x == 0 && y == 0) continue;
    (*this)(i, a) = s * x + t * y;
    (*this)(i, b) = u * x + v * y;
  }
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out += ", ";
      out += (*this)(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw ArithError(fmt::format("matrix product shape mismatch {}x{} * {}x{}", a.rows_, a.cols_,
                                 b.rows_, b.cols_));
  }
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
      }
    }
  }
  return c;
}

}  // namespace mubg
