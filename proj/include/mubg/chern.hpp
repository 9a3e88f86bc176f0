#pragma once

#include <string>
#include <vector>

#include "mubg/series.hpp"

namespace mubg {

// Product of projective spaces P^{k_1} x ... x P^{k_m} with hyperplane
// classes a_i (degree 2, a_i^{k_i+1} = 0).
class ModelBase {
 public:
  ModelBase() = default;
  explicit ModelBase(std::vector<int> dims);
  static ModelBase point() { return ModelBase(); }

  const std::vector<int>& dims() const { return dims_; }
  std::size_t factors() const { return dims_.size(); }
  int dimension() const;  // complex dimension
  // a, b, c, d for up to four factors, else a1..am.
  const std::vector<std::string>& names() const { return names_; }

  // Context on the a_i followed by `extra`, truncated at 2*dimension plus
  // `extra_degree`.
  ContextPtr context(const ScalarKind& kind, std::vector<Variable> extra = {}, int extra_degree = 0) const;
  Exponents top(const SeriesContext& ctx) const;
  std::string describe() const;

 private:
  std::vector<int> dims_;
  std::vector<std::string> names_;
};

// A line bundle with a character j of the acting cyclic group and first
// Chern class sum c1_i a_i.
struct EquivLineBundle {
  int character = 0;
  std::vector<int> c1;

  friend bool operator==(const EquivLineBundle&, const EquivLineBundle&) = default;
};

struct EquivBundle {
  std::vector<EquivLineBundle> lines;

  std::size_t rank() const { return lines.size(); }
  EquivBundle operator+(const EquivBundle& other) const;
  static EquivBundle trivial(std::size_t rank, std::size_t factors);
  std::string describe() const;
};

// Default tangent data: P^1 -> one line with c1 = 2a; P^k (k > 1) -> k+1
// copies of a_i (the trivial summand of the Euler sequence is dropped).
EquivBundle default_tangent(const ModelBase& base);

// First Chern class of a line as an element of ctx.
TruncSeries chern_root(const ModelBase& base, const ContextPtr& ctx, const std::vector<int>& c1);

// Characters are integers j of a cyclic group of order n; with ctx over
// Q(zeta_F) they evaluate to zeta_F^{j * scale}, scale = F/n.

// sum zeta^{j * scale} exp(c1).
TruncSeries chern_character_at(const EquivBundle& e, const ModelBase& base, const ContextPtr& ctx, int scale = 1);

// prod over lines of t/(1-e^{-t}) at the roots; characters are ignored.
TruncSeries todd_class(const EquivBundle& t, const ModelBase& base, const ContextPtr& ctx);

// prod (zeta^j - 1)/(zeta^j - e^{-c1}); a character evaluating to 1 is an
// error.
TruncSeries u_class(const EquivBundle& nu, const ModelBase& base, const ContextPtr& ctx, int scale = 1);

// beta_1..beta_max of gamma - rank: coefficients of t^i in
// log(lambda_t(gamma) / (1+t)^rank), lines weighted by zeta^{j*scale} e^{c1}.
std::vector<TruncSeries> beta_classes(const EquivBundle& gamma, int max_index, const ModelBase& base,
                                      const ContextPtr& ctx, int scale = 1);

// Coefficient of the top monomial prod a_i^{k_i}.
Scalar evaluate_fundamental(const TruncSeries& x, const ModelBase& base);
// Same for every monomial in the remaining variables: the result lives in
// `target`, whose variables are the non-base variables of x's context.
TruncSeries evaluate_fundamental(const TruncSeries& x, const ModelBase& base, const ContextPtr& target);

}  // namespace mubg
