#include "mubg/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "mubg/error.hpp"

namespace mubg {

int euler_phi(int n) {
  if (n < 1) throw ArithError("euler_phi: n must be positive");
  int result = n;
  int m = n;
  for (int q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      while (m % q == 0) m /= q;
      result -= result / q;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {};
  std::vector<BigInt> quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    BigInt c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw ArithError("cyclotomic polynomial division is not exact");
  }
  return quot;
}

std::vector<BigInt> compute_cyclotomic(int n);

std::mutex cache_mutex;
std::map<int, std::vector<BigInt>>& cache() {
  static std::map<int, std::vector<BigInt>> table;
  return table;
}

std::vector<BigInt> compute_cyclotomic(int n) {
  std::vector<BigInt> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int n) {
  if (n < 1) throw ArithError("cyclotomic_polynomial: n must be positive");
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache().find(n);
    if (it != cache().end()) return it->second;
  }
  auto poly = compute_cyclotomic(n);
  std::lock_guard lock(cache_mutex);
  // std::map never invalidates references on insert.
  return cache().emplace(n, std::move(poly)).first->second;
}

namespace cyclo {

std::vector<Rational> reduce(std::vector<Rational> poly, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    Rational c = poly[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  poly.resize(deg, Rational(0));
  return poly;
}

std::vector<Rational> add(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<Rational> sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int n) {
  if (a.empty() || b.empty()) return reduce({}, n);
  std::vector<Rational> prod(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  return reduce(std::move(prod), n);
}

bool is_zero(const std::vector<Rational>& a) {
  for (const auto& c : a) {
    if (c != 0) return false;
  }
  return true;
}

namespace {

void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Polynomial long division over Q; returns (quotient, remainder).
std::pair<std::vector<Rational>, std::vector<Rational>> divmod(std::vector<Rational> num,
                                                               const std::vector<Rational>& den) {
  std::vector<Rational> quot;
  trim(num);
  if (num.size() < den.size()) return {quot, num};
  quot.assign(num.size() - den.size() + 1, Rational(0));
  const Rational lead = den.back();
  const long top = static_cast<long>(den.size()) - 1;
  for (long i = static_cast<long>(num.size()) - 1; i >= top; --i) {
    const auto shift = static_cast<std::size_t>(i - top);
    Rational c = num[static_cast<std::size_t>(i)] / lead;
    quot[shift] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
  }
  trim(num);
  return {quot, num};
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

std::vector<Rational> poly_sub(std::vector<Rational> a, const std::vector<Rational>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::vector<Rational> inverse(const std::vector<Rational>& a, int n) {
  if (is_zero(a)) throw ArithError("division by zero in Q(zeta_" + std::to_string(n) + ")");
  const auto& phi_int = cyclotomic_polynomial(n);
  std::vector<Rational> r0(phi_int.begin(), phi_int.end());
  std::vector<Rational> r1(a);
  trim(r1);
  std::vector<Rational> s0;                 // coefficient of a for r0
  std::vector<Rational> s1{Rational(1)};    // coefficient of a for r1
  while (r1.size() != 1) {
    auto [q, rem] = divmod(r0, r1);
    auto s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw ArithError("element is not invertible modulo Phi_n");
  }
  for (auto& c : s1) c /= r1[0];
  return reduce(std::move(s1), n);
}

std::vector<Rational> zeta_power(int n, long k) {
  long e = k % n;
  if (e < 0) e += n;
  std::vector<Rational> p(static_cast<std::size_t>(e) + 1, Rational(0));
  p[static_cast<std::size_t>(e)] = 1;
  return reduce(std::move(p), n);
}

std::vector<Rational> galois(const std::vector<Rational>& a, int n, int k) {
  if (std::gcd(k, n) != 1) throw ArithError("Galois map zeta -> zeta^k needs gcd(k, n) = 1");
  std::vector<Rational> out(a.size(), Rational(0));
  std::vector<Rational> poly(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    long e = (static_cast<long>(i) * k) % n;
    if (e < 0) e += n;
    poly[static_cast<std::size_t>(e)] += a[i];
  }
  return reduce(std::move(poly), n);
}

}  // namespace cyclo
}  // namespace mubg
