#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubg/int_matrix.hpp"

namespace mubg {

// Z, or Z/p^M with p^M small enough for 64-bit products.
struct CoeffRing {
  int p = 0;
  int power = 0;  // 0 means the integers

  static CoeffRing integers() { return {}; }
  static CoeffRing modular(int p, int m);

  bool is_modular() const { return power > 0; }
  std::int64_t modulus() const;  // p^M; modular only
  BigInt normalize(const BigInt& v) const;
  std::string to_string() const;

  friend bool operator==(const CoeffRing&, const CoeffRing&) = default;
};

// Submodule of R^n in canonical echelon form: Hermite normal form over Z,
// Howell form over Z/p^M. Rows of the form whose leading index is >= j
// generate every element of the module whose first j entries vanish, which
// makes reduction canonical and kernels readable off the echelon.
class Submodule {
 public:
  Submodule() = default;
  Submodule(CoeffRing ring, std::size_t dim, const std::vector<IntVector>& generators,
            bool with_transform = false);

  static Submodule zero(CoeffRing ring, std::size_t dim) { return Submodule(ring, dim, {}); }
  static Submodule full(CoeffRing ring, std::size_t dim);
  // Block-diagonal sum; the parts occupy consecutive coordinate ranges.
  static Submodule direct_sum(CoeffRing ring, const std::vector<const Submodule*>& parts);

  const CoeffRing& ring() const { return ring_; }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // Row i of the echelon as a combination of the generators (when requested).
  const std::vector<IntVector>& transform() const { return transform_; }
  bool is_zero() const { return rows_.empty(); }

  // Canonical representative of v modulo the module.
  IntVector reduce(const IntVector& v) const;
  bool contains(const IntVector& v) const;
  bool contains(const Submodule& other) const;
  bool operator==(const Submodule& other) const { return contains(other) && other.contains(*this); }
  // Coefficients c with v = sum c_i rows()[i], when v lies in the module.
  std::optional<IntVector> coordinates(const IntVector& v) const;
  // Same, against the original generators; needs the transform.
  std::optional<IntVector> generator_coordinates(const IntVector& v) const;

  Submodule sum(const Submodule& other) const;
  // Image of the module under v -> v * map (map given by the images of the
  // unit vectors, one row each, of length target_dim).
  Submodule image(const std::vector<IntVector>& map, std::size_t target_dim) const;

  // {c in R^s : sum c_i map[i] in target} where s = map.size().
  static Submodule preimage(const std::vector<IntVector>& map, const Submodule& target);

  // Invariants of this / sub (sub must be contained in this). Over Z a free
  // summand is reported as 0; over Z/p^M a free summand is p^M. Trivial
  // factors are omitted; torsion comes first in ascending order.
  IntVector quotient_invariants(const Submodule& sub) const;
  // Invariants of R^dim / this.
  IntVector cokernel_invariants() const;

 private:
  CoeffRing ring_;
  std::size_t dim_ = 0;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<IntVector> transform_;
};

// Smith form over Z/p^M of the row span: valuations v < M of the nonzero
// diagonal entries p^v, ascending.
struct ModularSmith {
  std::vector<int> valuations;
};
ModularSmith modular_smith(const std::vector<IntVector>& rows, std::size_t cols, const CoeffRing& ring);

// Invariant list such as "Z/2 + Z/4 + Z"; "0" for the trivial group.
std::string format_invariants(const IntVector& invariants);

}  // namespace mubg
