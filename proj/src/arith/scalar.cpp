#include "mubg/scalar.hpp"

#include <cctype>

#include <fmt/format.h>

#include "mubg/error.hpp"

namespace mubg {

namespace {

BigInt mod_nonneg(const BigInt& a, const BigInt& n) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

[[noreturn]] void mismatch(const Scalar& a, const Scalar& b) {
  throw ArithError(fmt::format("scalar variant mismatch: {} vs {}", a.kind().to_string(),
                               b.kind().to_string()));
}

std::string render_cyclotomic(const std::vector<Rational>& c) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    Rational mag = abs(c[k]);
    bool neg = c[k] < 0;
    std::string body;
    if (k == 0) {
      body = mag.get_str();
    } else {
      std::string zpart = k == 1 ? "z" : fmt::format("z^{}", k);
      body = mag == 1 ? zpart : mag.get_str() + "*" + zpart;
    }
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

ScalarKind ScalarKind::cyclotomic(int n) {
  if (n < 1) throw ArithError("cyclotomic order must be positive");
  return {ScalarTag::cyclotomic, n, 0, 0};
}

ScalarKind ScalarKind::modular(int p, int m) {
  if (p < 2 || m < 1) throw ArithError("modular kind needs p >= 2 and M >= 1");
  return {ScalarTag::modular, 0, p, m};
}

BigInt ScalarKind::modulus() const {
  if (tag != ScalarTag::modular) throw ArithError("modulus() of a non-modular kind");
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(prime), static_cast<unsigned long>(power));
  return n;
}

std::string ScalarKind::to_string() const {
  switch (tag) {
    case ScalarTag::integer: return "Z";
    case ScalarTag::rational: return "Q";
    case ScalarTag::cyclotomic: return fmt::format("Q(zeta_{})", order);
    case ScalarTag::modular: return fmt::format("Z/{}^{}", prime, power);
  }
  return "?";
}

Scalar::Scalar(Rational v) : kind_(ScalarKind::rational()), payload_(std::move(v)) {
  std::get<Rational>(payload_).canonicalize();
}

Scalar Scalar::rational(Rational v) { return Scalar(std::move(v)); }

Scalar Scalar::cyclotomic(int n, std::vector<Rational> coeffs) {
  Scalar s;
  s.kind_ = ScalarKind::cyclotomic(n);
  for (auto& c : coeffs) c.canonicalize();
  s.payload_ = cyclo::reduce(std::move(coeffs), n);
  return s;
}

Scalar Scalar::modular(int p, int m, BigInt residue) {
  Scalar s;
  s.kind_ = ScalarKind::modular(p, m);
  s.payload_ = mod_nonneg(residue, s.kind_.modulus());
  return s;
}

Scalar Scalar::zeta(int n, long k) { return cyclotomic(n, cyclo::zeta_power(n, k)); }

Scalar Scalar::from_int(const ScalarKind& kind, const BigInt& v) {
  switch (kind.tag) {
    case ScalarTag::integer: return Scalar(v);
    case ScalarTag::rational: return Scalar(Rational(v));
    case ScalarTag::cyclotomic: return cyclotomic(kind.order, {Rational(v)});
    case ScalarTag::modular: return modular(kind.prime, kind.power, v);
  }
  throw ArithError("unknown scalar kind");
}

Scalar Scalar::from_rational(const ScalarKind& kind, const Rational& v) {
  Rational q(v);
  q.canonicalize();
  switch (kind.tag) {
    case ScalarTag::integer:
      if (q.get_den() != 1) throw ArithError("non-integral rational " + q.get_str() + " in Z");
      return Scalar(BigInt(q.get_num()));
    case ScalarTag::rational: return Scalar(q);
    case ScalarTag::cyclotomic: return cyclotomic(kind.order, {q});
    case ScalarTag::modular: {
      Scalar den = modular(kind.prime, kind.power, q.get_den());
      return modular(kind.prime, kind.power, q.get_num()) * den.inverse();
    }
  }
  throw ArithError("unknown scalar kind");
}

bool Scalar::is_zero() const {
  switch (kind_.tag) {
    case ScalarTag::integer:
    case ScalarTag::modular: return integer_value() == 0;
    case ScalarTag::rational: return rational_value() == 0;
    case ScalarTag::cyclotomic: return cyclo::is_zero(cyclotomic_value());
  }
  return false;
}

bool Scalar::is_one() const { return *this == one(kind_); }

Scalar Scalar::operator-() const {
  Scalar r(*this);
  switch (kind_.tag) {
    case ScalarTag::integer: r.payload_ = BigInt(-integer_value()); break;
    case ScalarTag::rational: r.payload_ = Rational(-rational_value()); break;
    case ScalarTag::cyclotomic:
      for (auto& c : std::get<std::vector<Rational>>(r.payload_)) c = -c;
      break;
    case ScalarTag::modular:
      r.payload_ = mod_nonneg(-integer_value(), kind_.modulus());
      break;
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (!(a.kind_ == b.kind_)) mismatch(a, b);
  Scalar r(a);
  switch (a.kind_.tag) {
    case ScalarTag::integer: r.payload_ = BigInt(a.integer_value() + b.integer_value()); break;
    case ScalarTag::rational: r.payload_ = Rational(a.rational_value() + b.rational_value()); break;
    case ScalarTag::cyclotomic:
      r.payload_ = cyclo::add(a.cyclotomic_value(), b.cyclotomic_value());
      break;
    case ScalarTag::modular:
      r.payload_ = mod_nonneg(a.integer_value() + b.integer_value(), a.kind_.modulus());
      break;
  }
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (!(a.kind_ == b.kind_)) mismatch(a, b);
  Scalar r(a);
  switch (a.kind_.tag) {
    case ScalarTag::integer: r.payload_ = BigInt(a.integer_value() * b.integer_value()); break;
    case ScalarTag::rational: r.payload_ = Rational(a.rational_value() * b.rational_value()); break;
    case ScalarTag::cyclotomic:
      r.payload_ = cyclo::mul(a.cyclotomic_value(), b.cyclotomic_value(), a.kind_.order);
      break;
    case ScalarTag::modular:
      r.payload_ = mod_nonneg(a.integer_value() * b.integer_value(), a.kind_.modulus());
      break;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.kind_ == b.kind_ && a.payload_ == b.payload_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithError("division by zero");
  switch (kind_.tag) {
    case ScalarTag::integer:
      if (abs(integer_value()) != 1) {
        throw ArithError("integer " + integer_value().get_str() + " is not a unit in Z");
      }
      return *this;
    case ScalarTag::rational: return Scalar(Rational(1) / rational_value());
    case ScalarTag::cyclotomic:
      return cyclotomic(kind_.order, cyclo::inverse(cyclotomic_value(), kind_.order));
    case ScalarTag::modular: {
      BigInt inv;
      BigInt n = kind_.modulus();
      if (mpz_invert(inv.get_mpz_t(), integer_value().get_mpz_t(), n.get_mpz_t()) == 0) {
        throw ArithError(integer_value().get_str() + " is not a unit modulo " + n.get_str());
      }
      return modular(kind_.prime, kind_.power, inv);
    }
  }
  throw ArithError("unknown scalar kind");
}

Scalar Scalar::conj(int k) const {
  switch (kind_.tag) {
    case ScalarTag::integer:
    case ScalarTag::rational: return *this;
    case ScalarTag::cyclotomic:
      return cyclotomic(kind_.order, cyclo::galois(cyclotomic_value(), kind_.order, k));
    case ScalarTag::modular: break;
  }
  throw ArithError("Galois conjugation is undefined on residues");
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result = one(kind_);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::optional<BigInt> Scalar::as_integer() const {
  switch (kind_.tag) {
    case ScalarTag::integer: return integer_value();
    case ScalarTag::rational:
      if (rational_value().get_den() == 1) return BigInt(rational_value().get_num());
      return std::nullopt;
    case ScalarTag::cyclotomic: {
      const auto& c = cyclotomic_value();
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] != 0) return std::nullopt;
      }
      if (c[0].get_den() != 1) return std::nullopt;
      return BigInt(c[0].get_num());
    }
    case ScalarTag::modular: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Rational> Scalar::as_rational() const {
  switch (kind_.tag) {
    case ScalarTag::integer: return Rational(integer_value());
    case ScalarTag::rational: return rational_value();
    case ScalarTag::cyclotomic: {
      const auto& c = cyclotomic_value();
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] != 0) return std::nullopt;
      }
      return c[0];
    }
    case ScalarTag::modular: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Rational> Scalar::flatten(int n) const {
  return convert(ScalarKind::cyclotomic(n)).cyclotomic_value();
}

Scalar Scalar::convert(const ScalarKind& target) const {
  if (kind_ == target) return *this;
  switch (target.tag) {
    case ScalarTag::integer:
      if (auto v = as_integer()) return Scalar(*v);
      break;
    case ScalarTag::rational:
      if (auto v = as_rational()) return Scalar(*v);
      break;
    case ScalarTag::cyclotomic: {
      if (auto v = as_rational()) return cyclotomic(target.order, {*v});
      if (kind_.tag == ScalarTag::cyclotomic && target.order % kind_.order == 0) {
        const int step = target.order / kind_.order;
        const auto& c = cyclotomic_value();
        std::vector<Rational> poly(static_cast<std::size_t>(step) * c.size(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) poly[i * static_cast<std::size_t>(step)] = c[i];
        return cyclotomic(target.order, std::move(poly));
      }
      break;
    }
    case ScalarTag::modular:
      if (auto v = as_rational()) return from_rational(target, *v);
      break;
  }
  throw ArithError(fmt::format("cannot convert {} from {} to {}", to_string(), kind_.to_string(),
                               target.to_string()));
}

std::string Scalar::to_string() const {
  switch (kind_.tag) {
    case ScalarTag::integer:
    case ScalarTag::modular: return integer_value().get_str();
    case ScalarTag::rational: return rational_value().get_str();
    case ScalarTag::cyclotomic: return render_cyclotomic(cyclotomic_value());
  }
  return "?";
}

bool Scalar::is_compound() const {
  if (kind_.tag != ScalarTag::cyclotomic) return false;
  int terms = 0;
  for (const auto& c : cyclotomic_value()) terms += c != 0 ? 1 : 0;
  return terms > 1;
}

namespace {

struct ScalarParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  BigInt integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return BigInt(std::string(s.substr(start, pos - start)));
  }
  Rational unsigned_rational() {
    BigInt num = integer();
    if (eat('/')) {
      BigInt den = integer();
      if (den == 0) fail("zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ArithError(fmt::format("cannot parse scalar '{}': {}", s, why));
  }
};

}  // namespace

Scalar parse_scalar(std::string_view text, const ScalarKind& kind) {
  ScalarParser p{text};
  if (kind.tag != ScalarTag::cyclotomic) {
    bool neg = p.eat('-');
    if (!neg) p.eat('+');
    Rational q = p.unsigned_rational();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing characters");
    if (neg) q = -q;
    return Scalar::from_rational(kind, q);
  }
  std::vector<Rational> poly(static_cast<std::size_t>(kind.order), Rational(0));
  bool first = true;
  while (true) {
    p.skip();
    if (p.pos == text.size()) break;
    bool neg = false;
    if (p.eat('-')) {
      neg = true;
    } else if (!p.eat('+') && !first) {
      p.fail("expected + or -");
    }
    first = false;
    Rational coeff(1);
    bool have_coeff = false;
    if (p.at_digit()) {
      coeff = p.unsigned_rational();
      have_coeff = true;
    }
    long exponent = 0;
    bool star = have_coeff ? p.eat('*') : false;
    if (p.eat('z')) {
      exponent = 1;
      if (p.eat('^')) {
        bool eneg = p.eat('-');
        exponent = p.integer().get_si();
        if (eneg) exponent = -exponent;
      }
    } else if (star || !have_coeff) {
      p.fail("expected z");
    }
    long e = exponent % kind.order;
    if (e < 0) e += kind.order;
    poly[static_cast<std::size_t>(e)] += neg ? -coeff : coeff;
  }
  return Scalar::cyclotomic(kind.order, std::move(poly));
}

Scalar embed_cyclotomic(const Scalar& a, int n) { return a.convert(ScalarKind::cyclotomic(n)); }

}  // namespace mubg
