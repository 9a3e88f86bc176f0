#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mubg/cyclotomic.hpp"

namespace mubg {

enum class ScalarTag { integer, rational, cyclotomic, modular };

// Which exact ring a scalar lives in. Two scalars interoperate only when their
// kinds compare equal.
struct ScalarKind {
  ScalarTag tag = ScalarTag::integer;
  int order = 0;  // n for Q(zeta_n)
  int prime = 0;  // p for Z/p^M
  int power = 0;  // M for Z/p^M

  static ScalarKind integer() { return {}; }
  static ScalarKind rational() { return {ScalarTag::rational, 0, 0, 0}; }
  static ScalarKind cyclotomic(int n);
  static ScalarKind modular(int p, int m);

  bool contains_rationals() const {
    return tag == ScalarTag::rational || tag == ScalarTag::cyclotomic;
  }
  BigInt modulus() const;  // p^M; only for modular kinds
  std::string to_string() const;

  friend bool operator==(const ScalarKind&, const ScalarKind&) = default;
};

// Exact scalar: a big integer, a reduced rational, an element of Q(zeta_n)
// in the power basis modulo Phi_n, or a residue modulo p^M.
class Scalar {
 public:
  Scalar() = default;  // integer zero
  Scalar(long v) : payload_(BigInt(v)) {}  // NOLINT: integer literals are scalars
  explicit Scalar(BigInt v) : payload_(std::move(v)) {}
  explicit Scalar(Rational v);

  static Scalar rational(Rational v);
  static Scalar cyclotomic(int n, std::vector<Rational> coeffs);
  static Scalar modular(int p, int m, BigInt residue);
  static Scalar zeta(int n, long k = 1);

  static Scalar zero(const ScalarKind& kind) { return from_int(kind, 0); }
  static Scalar one(const ScalarKind& kind) { return from_int(kind, 1); }
  static Scalar from_int(const ScalarKind& kind, const BigInt& v);
  static Scalar from_rational(const ScalarKind& kind, const Rational& v);

  const ScalarKind& kind() const { return kind_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  Scalar inverse() const;
  // Galois automorphism zeta -> zeta^k (identity on Q).
  Scalar conj(int k) const;
  Scalar pow(long e) const;

  // Integer value when the scalar is an integer (any variant except modular).
  std::optional<BigInt> as_integer() const;
  std::optional<Rational> as_rational() const;
  // Coordinates over Q in the power basis of Q(zeta_n), n a multiple of the
  // scalar's own order (rationals embed as constants).
  std::vector<Rational> flatten(int n) const;
  // Same value viewed in another kind; throws unless the embedding is exact.
  Scalar convert(const ScalarKind& target) const;

  const BigInt& integer_value() const { return std::get<BigInt>(payload_); }
  const Rational& rational_value() const { return std::get<Rational>(payload_); }
  const std::vector<Rational>& cyclotomic_value() const {
    return std::get<std::vector<Rational>>(payload_);
  }

  std::string to_string() const;
  // True when the rendering is a sum of several terms, so it needs brackets
  // when used as a factor.
  bool is_compound() const;

 private:
  ScalarKind kind_;
  std::variant<BigInt, Rational, std::vector<Rational>> payload_;
};

// Parse a scalar written in the canonical text format for the given kind:
// integers "-3", rationals "1/2", cyclotomics as polynomials in z such as
// "1/3 - 1/3*z", residues as integers.
Scalar parse_scalar(std::string_view text, const ScalarKind& kind);

Scalar embed_cyclotomic(const Scalar& a, int n);

}  // namespace mubg
