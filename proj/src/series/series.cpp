#include "mubg/series.hpp"

#include <algorithm>

#include "mubg/error.hpp"

namespace mubg {

struct SeriesAccess {
  static TruncSeries::TermMap& terms(TruncSeries& s) { return s.terms_; }
};

namespace {

using TermMap = TruncSeries::TermMap;

void require_same(const TruncSeries& a, const TruncSeries& b) {
  if (a.context() != b.context() && !(*a.context() == *b.context())) {
    throw SeriesError("series from different contexts: " + a.context()->describe() + " vs " +
                      b.context()->describe());
  }
}

void accumulate(TermMap& m, const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

bool within_caps(const SeriesContext& ctx, const Exponents& e) {
  const auto& vars = ctx.variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].cap && e[i] > *vars[i].cap) return false;
  }
  return true;
}

// Product honoring caps and a degree bound; floors are ignored.
TermMap raw_mul(const TermMap& a, const TermMap& b, const SeriesContext& ctx, int bound) {
  TermMap out;
  const std::size_t n = ctx.size();
  Exponents e(n);
  for (const auto& [ea, ca] : a) {
    const int da = ctx.weighted_degree(ea);
    for (const auto& [eb, cb] : b) {
      if (da + ctx.weighted_degree(eb) > bound) continue;
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      if (!within_caps(ctx, e)) continue;
      accumulate(out, e, ca * cb);
    }
  }
  return out;
}

int min_degree(const TermMap& m, const SeriesContext& ctx) {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : m) {
    int w = ctx.weighted_degree(e);
    if (first || w < d) d = w;
    first = false;
  }
  return d;
}

void require_rationals(const SeriesContext& ctx, const char* op) {
  if (!ctx.kind().contains_rationals()) {
    throw SeriesError(std::string(op) + " needs coefficients containing the rationals, got " +
                      ctx.kind().to_string());
  }
}

}  // namespace

TruncSeries::TruncSeries(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw SeriesError("null series context");
}

TruncSeries TruncSeries::constant(ContextPtr ctx, const Scalar& c) {
  TruncSeries s(std::move(ctx));
  s.add_term(Exponents(s.ctx_->size(), 0), c);
  return s;
}

TruncSeries TruncSeries::from_int(ContextPtr ctx, long c) {
  Scalar v = Scalar::from_int(ctx->kind(), BigInt(c));
  return constant(std::move(ctx), v);
}

TruncSeries TruncSeries::variable(ContextPtr ctx, std::string_view name) {
  TruncSeries s(std::move(ctx));
  Exponents e(s.ctx_->size(), 0);
  e[s.ctx_->require(name)] = 1;
  s.add_term(e, Scalar::one(s.ctx_->kind()));
  return s;
}

TruncSeries TruncSeries::monomial(ContextPtr ctx, Exponents e, const Scalar& c) {
  TruncSeries s(std::move(ctx));
  if (e.size() != s.ctx_->size()) throw SeriesError("monomial exponent has wrong length");
  s.add_term(e, c);
  return s;
}

void TruncSeries::add_term(const Exponents& e, const Scalar& c) {
  if (!(c.kind() == ctx_->kind())) {
    throw SeriesError("coefficient " + c.kind().to_string() + " in a series over " +
                      ctx_->kind().to_string());
  }
  if (!ctx_->admits(e)) return;
  accumulate(terms_, e, c);
}

Scalar TruncSeries::constant_term() const {
  auto it = terms_.find(Exponents(ctx_->size(), 0));
  return it == terms_.end() ? Scalar::zero(ctx_->kind()) : it->second;
}

std::optional<int> TruncSeries::lowest_degree() const {
  if (terms_.empty()) return std::nullopt;
  return min_degree(terms_, *ctx_);
}

std::vector<TruncSeries::TermMap::const_iterator> TruncSeries::ordered_terms() const {
  std::vector<TermMap::const_iterator> out;
  out.reserve(terms_.size());
  for (auto it = terms_.begin(); it != terms_.end(); ++it) out.push_back(it);
  const SeriesContext& ctx = *ctx_;
  std::sort(out.begin(), out.end(), [&ctx](const auto& a, const auto& b) {
    int da = ctx.weighted_degree(a->first);
    int db = ctx.weighted_degree(b->first);
    if (da != db) return da < db;
    return a->first > b->first;
  });
  return out;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries out(ctx_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  require_same(a, b);
  TruncSeries out = a;
  for (const auto& [e, c] : b.terms_) accumulate(out.terms_, e, c);
  return out;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  require_same(a, b);
  TruncSeries out = a;
  for (const auto& [e, c] : b.terms_) accumulate(out.terms_, e, -c);
  return out;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  require_same(a, b);
  TruncSeries out(a.ctx_);
  const SeriesContext& ctx = *a.ctx_;
  const std::size_t n = ctx.size();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_) {
    const int da = ctx.weighted_degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + ctx.weighted_degree(eb) > ctx.degree()) continue;
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      if (!ctx.admits(e)) continue;
      accumulate(out.terms_, e, ca * cb);
    }
  }
  return out;
}

TruncSeries operator*(const Scalar& c, const TruncSeries& a) {
  TruncSeries out(a.ctx_);
  if (!(c.kind() == a.ctx_->kind())) throw SeriesError("scalar of kind " + c.kind().to_string() +
                                                       " times series over " + a.ctx_->kind().to_string());
  if (c.is_zero()) return out;
  for (const auto& [e, v] : a.terms_) accumulate(out.terms_, e, c * v);
  return out;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  require_same(a, b);
  return a.terms_ == b.terms_;
}

TruncSeries TruncSeries::pow(int n) const {
  if (n < 0) return invert(*this).pow(-n);
  TruncSeries result = TruncSeries::from_int(ctx_, 1);
  TruncSeries base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

std::string TruncSeries::to_string() const { return to_text(*this); }

TruncSeries invert(const TruncSeries& a) {
  const SeriesContext& ctx = *a.context();
  if (a.is_zero()) throw SeriesError("inverse of zero series");
  const int low = *a.lowest_degree();
  std::vector<std::pair<Exponents, Scalar>> lead;
  for (const auto& [e, c] : a.terms()) {
    if (ctx.weighted_degree(e) == low) lead.emplace_back(e, c);
  }
  if (lead.size() != 1) throw SeriesError("lowest-degree part is not a single monomial; not invertible");
  const Exponents& m = lead[0].first;
  Scalar cinv;
  try {
    cinv = lead[0].second.inverse();
  } catch (const Error&) {
    throw SeriesError("leading coefficient " + lead[0].second.to_string() + " is not invertible");
  }
  const std::size_t n = ctx.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ctx.variables()[i].cap && m[i] != 0) throw SeriesError("leading monomial is nilpotent");
  }
  // a = c m (1 + r) with every term of r of positive degree.
  TermMap r;
  for (const auto& [e, c] : a.terms()) {
    if (e == m) continue;
    Exponents d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = e[i] - m[i];
    accumulate(r, d, c * cinv);
  }
  const int bound = ctx.degree() + low;
  TermMap sum;
  accumulate(sum, Exponents(n, 0), Scalar::one(ctx.kind()));
  TermMap power = sum;
  TermMap neg_r;
  for (const auto& [e, c] : r) neg_r.emplace(e, -c);
  while (true) {
    power = raw_mul(power, neg_r, ctx, bound);
    if (power.empty()) break;
    for (const auto& [e, c] : power) accumulate(sum, e, c);
  }
  TruncSeries out(a.context());
  for (const auto& [e, c] : sum) {
    Exponents d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = e[i] - m[i];
    if (ctx.weighted_degree(d) > ctx.degree()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] < ctx.variables()[i].floor) {
        throw SeriesError("inverse needs exponent " + std::to_string(d[i]) + " of " +
                          ctx.variables()[i].name + " below its floor");
      }
    }
    out.add_term(d, c * cinv);
  }
  return out;
}

TruncSeries substitute(const TruncSeries& f, const ContextPtr& target, const std::vector<TruncSeries>& images) {
  const SeriesContext& src = *f.context();
  if (images.size() != src.size()) throw SeriesError("substitute: wrong number of images");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& img = images[i];
    if (!(*img.context() == *target)) throw SeriesError("substitute: image in a foreign context");
    const int w = src.variables()[i].weight;
    for (const auto& [e, c] : img.terms()) {
      if (target->weighted_degree(e) < w) {
        throw SeriesError("substitute: image of " + src.variables()[i].name +
                          " has a term of degree below the variable's weight");
      }
    }
  }
  // Powers per variable, built on demand.
  std::vector<std::vector<TruncSeries>> pos(src.size()), neg(src.size());
  auto power = [&](std::size_t i, int k) -> const TruncSeries& {
    auto& cache = k >= 0 ? pos[i] : neg[i];
    const std::size_t kk = static_cast<std::size_t>(k >= 0 ? k : -k);
    if (cache.empty()) {
      cache.push_back(TruncSeries::from_int(target, 1));
      cache.push_back(k >= 0 ? images[i] : invert(images[i]));
    }
    while (cache.size() <= kk) cache.push_back(cache.back() * cache[1]);
    return cache[kk];
  };
  TruncSeries out(target);
  for (const auto& [e, c] : f.terms()) {
    TruncSeries term = TruncSeries::constant(target, c.convert(target->kind()));
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] != 0) term *= power(i, e[i]);
    }
    out += term;
  }
  return out;
}

TruncSeries compose(const TruncSeries& outer, std::string_view var, const TruncSeries& inner) {
  const SeriesContext& src = *outer.context();
  const std::size_t v = src.require(var);
  if (!inner.constant_term().is_zero()) throw SeriesError("compose: inner series has a nonzero constant term");
  std::vector<TruncSeries> images;
  images.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (i == v)
      images.push_back(inner);
    else
      images.push_back(TruncSeries::variable(inner.context(), src.variables()[i].name));
  }
  return substitute(outer, inner.context(), images);
}

TruncSeries exp_series(const TruncSeries& a) {
  const SeriesContext& ctx = *a.context();
  require_rationals(ctx, "exp");
  if (!a.constant_term().is_zero()) throw SeriesError("exp needs a zero constant term");
  if (a.is_zero()) return TruncSeries::from_int(a.context(), 1);
  if (*a.lowest_degree() <= 0) throw SeriesError("exp argument has terms of non-positive degree");
  TruncSeries sum = TruncSeries::from_int(a.context(), 1);
  TruncSeries term = sum;
  for (long k = 1; !term.is_zero(); ++k) {
    term = Scalar::from_rational(ctx.kind(), Rational(1, k)) * (term * a);
    sum += term;
  }
  return sum;
}

TruncSeries log_series(const TruncSeries& a) {
  const SeriesContext& ctx = *a.context();
  require_rationals(ctx, "log");
  if (!a.constant_term().is_one()) throw SeriesError("log needs constant term 1");
  TruncSeries u = a - TruncSeries::from_int(a.context(), 1);
  TruncSeries sum(a.context());
  if (u.is_zero()) return sum;
  if (*u.lowest_degree() <= 0) throw SeriesError("log argument has non-constant terms of non-positive degree");
  TruncSeries power = u;
  for (long k = 1; !power.is_zero(); ++k) {
    Rational c(k % 2 == 1 ? 1 : -1, k);
    sum += Scalar::from_rational(ctx.kind(), c) * power;
    power *= u;
  }
  return sum;
}

Scalar coefficient_of(const TruncSeries& a, const Exponents& e) {
  if (!a.context()->admits(e)) throw SeriesError("coefficient query outside the truncation window");
  auto it = a.terms().find(e);
  return it == a.terms().end() ? Scalar::zero(a.context()->kind()) : it->second;
}

TruncSeries coefficient_in(const TruncSeries& a, std::string_view var, int k) {
  const std::size_t v = a.context()->require(var);
  TruncSeries out(a.context());
  for (const auto& [e, c] : a.terms()) {
    if (e[v] != k) continue;
    Exponents d = e;
    d[v] = 0;
    out.add_term(d, c);
  }
  return out;
}

TruncSeries truncate(const TruncSeries& a, int degree) {
  if (degree > a.context()->degree()) throw SeriesError("truncate can only lower the degree bound");
  TruncSeries out(a.context()->with_degree(degree));
  for (const auto& [e, c] : a.terms()) out.add_term(e, c);
  return out;
}

TruncSeries rehome(const TruncSeries& a, const ContextPtr& target) {
  const SeriesContext& src = *a.context();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->index_of(src.variables()[i].name);
  TruncSeries out(target);
  for (const auto& [e, c] : a.terms()) {
    Exponents d(target->size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) throw SeriesError("rehome: variable " + src.variables()[i].name + " missing in target");
      d[*map[i]] = e[i];
    }
    out.add_term(d, c.convert(target->kind()));
  }
  return out;
}

}  // namespace mubg
