#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mubg/scalar.hpp"

namespace mubg {

using Exponents = std::vector<int>;

// A series variable. `weight` is the truncation degree (Euler classes and
// Chern roots 2, b_i 2i, coefficient symbols such as beta 0). `floor` is the
// lowest allowed exponent (negative for localized variables); `cap`, when
// set, imposes v^(cap+1) = 0.
struct Variable {
  std::string name;
  int weight = 2;
  int floor = 0;
  std::optional<int> cap;

  friend bool operator==(const Variable&, const Variable&) = default;
};

class SeriesContext;
using ContextPtr = std::shared_ptr<const SeriesContext>;

class SeriesContext {
 public:
  SeriesContext(std::vector<Variable> vars, int degree, ScalarKind kind);
  static ContextPtr make(std::vector<Variable> vars, int degree, ScalarKind kind) {
    return std::make_shared<const SeriesContext>(std::move(vars), degree, kind);
  }

  const std::vector<Variable>& variables() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  int degree() const { return degree_; }
  const ScalarKind& kind() const { return kind_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  int weighted_degree(const Exponents& e) const;
  // Inside floors, caps and the degree bound.
  bool admits(const Exponents& e) const;

  ContextPtr with_degree(int degree) const;
  ContextPtr with_kind(const ScalarKind& kind) const;

  friend bool operator==(const SeriesContext& a, const SeriesContext& b) {
    return a.degree_ == b.degree_ && a.kind_ == b.kind_ && a.vars_ == b.vars_;
  }
  std::string describe() const;

 private:
  std::vector<Variable> vars_;
  int degree_;
  ScalarKind kind_;
};

// Sparse truncated Laurent series over an exact scalar ring.
class TruncSeries {
 public:
  using TermMap = std::map<Exponents, Scalar>;

  explicit TruncSeries(ContextPtr ctx);
  static TruncSeries constant(ContextPtr ctx, const Scalar& c);
  static TruncSeries from_int(ContextPtr ctx, long c);
  static TruncSeries variable(ContextPtr ctx, std::string_view name);
  static TruncSeries monomial(ContextPtr ctx, Exponents e, const Scalar& c);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Adds c at exponent e; silently drops terms outside the window.
  void add_term(const Exponents& e, const Scalar& c);

  Scalar constant_term() const;
  // Lowest weighted degree among the terms; nullopt for zero.
  std::optional<int> lowest_degree() const;
  // Terms in graded-lex order: ascending weighted degree, then exponents
  // in decreasing lexicographic order.
  std::vector<TermMap::const_iterator> ordered_terms() const;

  TruncSeries operator-() const;
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const Scalar& c, const TruncSeries& a);
  TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
  TruncSeries& operator-=(const TruncSeries& b) { return *this = *this - b; }
  TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  TruncSeries pow(int n) const;
  std::string to_string() const;

 private:
  ContextPtr ctx_;
  TermMap terms_;
  friend struct SeriesAccess;
};

// a * result = 1 up to the degree bound.
TruncSeries invert(const TruncSeries& a);

// Substitute images[i] for variable i of f; the images live in `target`.
// Every term of the image of a variable of positive weight must have
// weighted degree at least that weight.
TruncSeries substitute(const TruncSeries& f, const ContextPtr& target,
                       const std::vector<TruncSeries>& images);

// Substitute `inner` for variable `var` of `outer`; the remaining variables
// of `outer` are matched by name inside the context of `inner`.
TruncSeries compose(const TruncSeries& outer, std::string_view var, const TruncSeries& inner);

TruncSeries exp_series(const TruncSeries& a);
TruncSeries log_series(const TruncSeries& a);

// Stored coefficient at e (zero when absent); throws for exponents outside
// the window.
Scalar coefficient_of(const TruncSeries& a, const Exponents& e);
// Coefficient of var^k as a series in the remaining variables (same
// context, exponent of var set to 0).
TruncSeries coefficient_in(const TruncSeries& a, std::string_view var, int k);

// Same series in a smaller degree bound.
TruncSeries truncate(const TruncSeries& a, int degree);
// Re-home a series in another context whose variables include those of a
// (matched by name); coefficients are converted to the target kind.
TruncSeries rehome(const TruncSeries& a, const ContextPtr& target);

// Canonical text, e.g. "2*x - beta*x^2" or "(1/3 - 1/3*z)*b1".
std::string to_text(const TruncSeries& a);
TruncSeries parse_series(std::string_view text, const ContextPtr& ctx);

}  // namespace mubg
