#include <cctype>

#include "mubg/error.hpp"
#include "mubg/series.hpp"

namespace mubg {

namespace {

std::string monomial_text(const SeriesContext& ctx, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ctx.variables()[i].name;
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string to_text(const TruncSeries& a) {
  if (a.is_zero()) return "0";
  const SeriesContext& ctx = *a.context();
  std::string out;
  bool first = true;
  for (auto it : a.ordered_terms()) {
    const std::string mono = monomial_text(ctx, it->first);
    const Scalar& c = it->second;
    bool negative = false;
    std::string body;
    if (auto q = c.as_rational()) {
      negative = *q < 0;
      Rational mag = abs(*q);
      if (mono.empty())
        body = mag.get_str();
      else if (mag == 1)
        body = mono;
      else
        body = mag.get_str() + "*" + mono;
    } else {
      body = "(" + c.to_string() + ")";
      if (!mono.empty()) body += "*" + mono;
    }
    if (first)
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

namespace {

class SeriesParser {
 public:
  SeriesParser(std::string_view s, const ContextPtr& ctx) : s_(s), ctx_(ctx) {}

  TruncSeries parse() {
    TruncSeries out(ctx_);
    skip();
    if (pos_ == s_.size()) fail("empty series");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      bool neg = false;
      if (eat('-'))
        neg = true;
      else if (!eat('+') && !first)
        fail("expected + or -");
      first = false;
      term(out, neg);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SeriesError("cannot parse series at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string_view digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  void term(TruncSeries& out, bool neg) {
    const SeriesContext& ctx = *ctx_;
    Scalar coeff = Scalar::one(ctx.kind());
    Exponents e(ctx.size(), 0);
    do {
      skip();
      if (pos_ == s_.size()) fail("expected a factor");
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num(digits());
        if (eat('/')) {
          skip();
          num += "/" + std::string(digits());
        }
        coeff = coeff * parse_scalar(num, ctx.kind());
      } else if (c == '(') {
        ++pos_;
        std::size_t start = pos_;
        int depth = 1;
        while (pos_ < s_.size() && depth > 0) {
          if (s_[pos_] == '(') ++depth;
          if (s_[pos_] == ')') --depth;
          ++pos_;
        }
        if (depth != 0) fail("unbalanced parenthesis");
        coeff = coeff * parse_scalar(s_.substr(start, pos_ - 1 - start), ctx.kind());
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          ++pos_;
        std::string_view name = s_.substr(start, pos_ - start);
        auto idx = ctx.index_of(name);
        if (!idx) fail("unknown variable " + std::string(name));
        int k = 1;
        if (eat('^')) {
          bool eneg = eat('-');
          skip();
          k = std::stoi(std::string(digits()));
          if (eneg) k = -k;
        }
        e[*idx] += k;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    } while (eat('*'));
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < ctx.variables()[i].floor) {
        fail("exponent of " + ctx.variables()[i].name + " below its floor");
      }
    }
    out.add_term(e, neg ? -coeff : coeff);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  ContextPtr ctx_;
};

}  // namespace

TruncSeries parse_series(std::string_view text, const ContextPtr& ctx) { return SeriesParser(text, ctx).parse(); }

}  // namespace mubg
