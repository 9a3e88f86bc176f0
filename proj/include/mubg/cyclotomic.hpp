#pragma once

#include <gmpxx.h>

#include <vector>

namespace mubg {

using BigInt = mpz_class;
using Rational = mpq_class;

// Euler's totient.
int euler_phi(int n);

// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
// Computed as (x^n - 1) / prod_{d | n, d < n} Phi_d and cached.
const std::vector<BigInt>& cyclotomic_polynomial(int n);

namespace cyclo {

// Reduce an arbitrary rational polynomial (constant term first) modulo Phi_n.
// The result has length exactly euler_phi(n).
std::vector<Rational> reduce(std::vector<Rational> poly, int n);

std::vector<Rational> add(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> sub(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int n);

// Inverse in Q[x]/Phi_n; the input must be nonzero.
std::vector<Rational> inverse(const std::vector<Rational>& a, int n);

// Canonical coordinates of zeta_n^k.
std::vector<Rational> zeta_power(int n, long k);

// Galois automorphism zeta -> zeta^k.
std::vector<Rational> galois(const std::vector<Rational>& a, int n, int k);

bool is_zero(const std::vector<Rational>& a);

}  // namespace cyclo
}  // namespace mubg
