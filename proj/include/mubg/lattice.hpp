#pragma once

#include <vector>

#include "mubg/int_matrix.hpp"
#include "mubg/scalar.hpp"

namespace mubg {

using RationalVector = std::vector<Rational>;

// Outcome of a lattice membership test. A member comes with integer
// coefficients reproducing v; a non-member comes with a dual vector w such
// that w . row is an integer for every lattice row while w . v is not.
struct LatticeCertificate {
  bool member = false;
  IntVector coefficients;
  RationalVector dual_witness;

  bool verify(const RationalVector& v, const std::vector<RationalVector>& rows) const;
};

// Is v in the Z-span of the rows? Rows may have rational entries.
LatticeCertificate lattice_member(const RationalVector& v, const std::vector<RationalVector>& rows);
LatticeCertificate lattice_member(const RationalVector& v, const IntMatrix& rows);

// Coordinates of a vector of cyclotomic (or rational) scalars over Q in the
// power basis of Q(zeta_n).
RationalVector flatten(const std::vector<Scalar>& v, int n);

// Cyclotomic variant: both sides are flattened over Q(zeta_n), n the lcm of
// all orders involved.
struct FlatLattice {
  int order = 1;
  RationalVector vector;
  std::vector<RationalVector> rows;
};
FlatLattice flatten_lattice(const std::vector<Scalar>& v, const std::vector<std::vector<Scalar>>& rows);
LatticeCertificate lattice_member(const std::vector<Scalar>& v,
                                  const std::vector<std::vector<Scalar>>& rows);

}  // namespace mubg
