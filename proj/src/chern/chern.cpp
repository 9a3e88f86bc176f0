#include "mubg/chern.hpp"

#include <numeric>

#include "mubg/error.hpp"

namespace mubg {

namespace {

int field_of(const ContextPtr& ctx) {
  const ScalarKind& k = ctx->kind();
  if (k.tag == ScalarTag::cyclotomic) return k.order;
  if (k.tag == ScalarTag::rational) return 1;
  throw ChernError("characteristic classes need coefficients over Q or Q(zeta_n), got " + k.to_string());
}

Scalar root_of_unity(const ContextPtr& ctx, long power) {
  const int f = field_of(ctx);
  if (f == 1) return Scalar::one(ctx->kind());
  return Scalar::zeta(f, ((power % f) + f) % f);
}

// sum_{k >= 0} c_k u^k with c_k = coeff(k), up to the degree bound.
TruncSeries power_series(const TruncSeries& u, Rational (*coeff)(long)) {
  const ContextPtr& ctx = u.context();
  TruncSeries out = TruncSeries::constant(ctx, Scalar::from_rational(ctx->kind(), coeff(0)));
  if (u.is_zero()) return out;
  TruncSeries power = u;
  for (long k = 1; !power.is_zero(); ++k) {
    out += Scalar::from_rational(ctx->kind(), coeff(k)) * power;
    power *= u;
  }
  return out;
}

Rational factorial_inverse(long k) {
  BigInt f = 1;
  for (long i = 2; i <= k; ++i) f *= i;
  return Rational(BigInt(1), f);
}

// (1 - e^{-u})/u = sum (-1)^k u^k / (k+1)!
Rational todd_denominator(long k) {
  Rational r = factorial_inverse(k + 1);
  return k % 2 == 0 ? r : -r;
}

void check_line(const EquivLineBundle& l, const ModelBase& base) {
  if (l.c1.size() != base.factors()) {
    throw ChernError("line bundle c1 has " + std::to_string(l.c1.size()) + " entries, base has " +
                     std::to_string(base.factors()) + " factors");
  }
}

}  // namespace

ModelBase::ModelBase(std::vector<int> dims) : dims_(std::move(dims)) {
  static const char* small[] = {"a", "b", "c", "d"};
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 1) throw ChernError("projective factors need dimension >= 1");
    names_.push_back(dims_.size() <= 4 ? small[i] : "a" + std::to_string(i + 1));
  }
}

int ModelBase::dimension() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

ContextPtr ModelBase::context(const ScalarKind& kind, std::vector<Variable> extra, int extra_degree) const {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < dims_.size(); ++i) vars.push_back({names_[i], 2, 0, dims_[i]});
  for (auto& v : extra) vars.push_back(std::move(v));
  return SeriesContext::make(std::move(vars), 2 * dimension() + extra_degree, kind);
}

Exponents ModelBase::top(const SeriesContext& ctx) const {
  Exponents e(ctx.size(), 0);
  for (std::size_t i = 0; i < dims_.size(); ++i) e[ctx.require(names_[i])] = dims_[i];
  return e;
}

std::string ModelBase::describe() const {
  if (dims_.empty()) return "point";
  std::string out;
  for (std::size_t i = 0; i < dims_.size(); ++i) out += (i ? " x " : "") + ("P^" + std::to_string(dims_[i]));
  return out;
}

EquivBundle EquivBundle::operator+(const EquivBundle& other) const {
  EquivBundle out = *this;
  out.lines.insert(out.lines.end(), other.lines.begin(), other.lines.end());
  return out;
}

EquivBundle EquivBundle::trivial(std::size_t rank, std::size_t factors) {
  EquivBundle out;
  for (std::size_t i = 0; i < rank; ++i) out.lines.push_back({0, std::vector<int>(factors, 0)});
  return out;
}

std::string EquivBundle::describe() const {
  if (lines.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += i ? " + " : "";
    out += "(" + std::to_string(lines[i].character) + " |";
    for (std::size_t k = 0; k < lines[i].c1.size(); ++k) out += (k ? "," : " ") + std::to_string(lines[i].c1[k]);
    out += ")";
  }
  return out;
}

EquivBundle default_tangent(const ModelBase& base) {
  EquivBundle t;
  for (std::size_t i = 0; i < base.factors(); ++i) {
    std::vector<int> c1(base.factors(), 0);
    if (base.dims()[i] == 1) {
      c1[i] = 2;
      t.lines.push_back({0, c1});
    } else {
      c1[i] = 1;
      for (int k = 0; k <= base.dims()[i]; ++k) t.lines.push_back({0, c1});
    }
  }
  return t;
}

TruncSeries chern_root(const ModelBase& base, const ContextPtr& ctx, const std::vector<int>& c1) {
  TruncSeries r(ctx);
  for (std::size_t i = 0; i < base.factors(); ++i) {
    if (c1[i] != 0) {
      r += Scalar::from_int(ctx->kind(), BigInt(c1[i])) * TruncSeries::variable(ctx, base.names()[i]);
    }
  }
  return r;
}

TruncSeries chern_character_at(const EquivBundle& e, const ModelBase& base, const ContextPtr& ctx, int scale) {
  TruncSeries out(ctx);
  for (const auto& l : e.lines) {
    check_line(l, base);
    out += root_of_unity(ctx, static_cast<long>(l.character) * scale) *
           exp_series(chern_root(base, ctx, l.c1));
  }
  return out;
}

TruncSeries todd_class(const EquivBundle& t, const ModelBase& base, const ContextPtr& ctx) {
  field_of(ctx);
  TruncSeries out = TruncSeries::from_int(ctx, 1);
  for (const auto& l : t.lines) {
    check_line(l, base);
    TruncSeries u = chern_root(base, ctx, l.c1);
    if (u.is_zero()) continue;
    out *= invert(power_series(u, todd_denominator));
  }
  return out;
}

TruncSeries u_class(const EquivBundle& nu, const ModelBase& base, const ContextPtr& ctx, int scale) {
  const int f = field_of(ctx);
  TruncSeries out = TruncSeries::from_int(ctx, 1);
  for (const auto& l : nu.lines) {
    check_line(l, base);
    const long power = static_cast<long>(l.character) * scale;
    if (power % f == 0) {
      throw ChernError("normal summand with trivial character " + std::to_string(l.character));
    }
    TruncSeries u = chern_root(base, ctx, l.c1);
    if (u.is_zero()) continue;
    const Scalar z = root_of_unity(ctx, power);
    TruncSeries one = TruncSeries::from_int(ctx, 1);
    TruncSeries num = TruncSeries::constant(ctx, z) - one;
    TruncSeries den = TruncSeries::constant(ctx, z) - exp_series(-u);
    out *= num * invert(den);
  }
  return out;
}

std::vector<TruncSeries> beta_classes(const EquivBundle& gamma, int max_index, const ModelBase& base,
                                      const ContextPtr& ctx, int scale) {
  if (max_index < 0) throw ChernError("beta class index must be >= 0");
  std::vector<TruncSeries> out;
  if (max_index == 0) return out;
  if (ctx->index_of("t")) throw ChernError("context already uses the symbol t");
  std::vector<Variable> vars = ctx->variables();
  vars.push_back({"t", 2, 0, max_index});
  auto tctx = SeriesContext::make(vars, ctx->degree() + 2 * max_index, ctx->kind());
  TruncSeries t = TruncSeries::variable(tctx, "t");
  TruncSeries one = TruncSeries::from_int(tctx, 1);
  TruncSeries lambda = one;
  for (const auto& l : gamma.lines) {
    check_line(l, base);
    TruncSeries line = root_of_unity(tctx, static_cast<long>(l.character) * scale) *
                       exp_series(rehome(chern_root(base, ctx, l.c1), tctx));
    lambda *= one + line * t;
  }
  lambda *= invert((one + t).pow(static_cast<int>(gamma.rank())));
  TruncSeries log = log_series(lambda);
  for (int i = 1; i <= max_index; ++i) {
    TruncSeries c = coefficient_in(log, "t", i);
    TruncSeries back(ctx);
    const std::size_t tv = tctx->require("t");
    for (const auto& [e, v] : c.terms()) {
      Exponents d(e.begin(), e.begin() + static_cast<long>(tv));
      d.insert(d.end(), e.begin() + static_cast<long>(tv) + 1, e.end());
      back.add_term(d, v);
    }
    out.push_back(std::move(back));
  }
  return out;
}

Scalar evaluate_fundamental(const TruncSeries& x, const ModelBase& base) {
  Exponents e = base.top(*x.context());
  auto it = x.terms().find(e);
  return it == x.terms().end() ? Scalar::zero(x.context()->kind()) : it->second;
}

TruncSeries evaluate_fundamental(const TruncSeries& x, const ModelBase& base, const ContextPtr& target) {
  const SeriesContext& ctx = *x.context();
  std::vector<std::size_t> base_idx;
  for (const auto& n : base.names()) base_idx.push_back(ctx.require(n));
  std::vector<std::size_t> map;
  for (const auto& v : target->variables()) map.push_back(ctx.require(v.name));
  TruncSeries out(target);
  for (const auto& [e, c] : x.terms()) {
    bool top = true;
    for (std::size_t i = 0; i < base_idx.size(); ++i) top = top && e[base_idx[i]] == base.dims()[i];
    if (!top) continue;
    Exponents d(target->size());
    for (std::size_t i = 0; i < map.size(); ++i) d[i] = e[map[i]];
    out.add_term(d, c.convert(target->kind()));
  }
  return out;
}

}  // namespace mubg
