#include "mubg/fgl.hpp"

#include <fstream>
#include <sstream>

#include "mubg/error.hpp"

namespace mubg {

namespace {

std::vector<Variable> law_variables(const std::vector<FglParameter>& params, std::vector<std::string> names) {
  std::vector<Variable> vars;
  for (auto& n : names) vars.push_back({std::move(n), 1, 0, {}});
  for (const auto& p : params) vars.push_back({p.name, 0, 0, {}});
  return vars;
}

// Same series over Z when every coefficient is an integer.
TruncSeries integral_if_possible(const TruncSeries& s) {
  if (s.context()->kind().tag != ScalarTag::rational) return s;
  for (const auto& [e, c] : s.terms()) {
    if (!c.as_integer()) return s;
  }
  return rehome(s, s.context()->with_kind(ScalarKind::integer()));
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

std::string to_string(FglKind kind) {
  switch (kind) {
    case FglKind::additive: return "additive";
    case FglKind::multiplicative: return "multiplicative";
    case FglKind::universal: return "universal";
    case FglKind::user: return "user";
  }
  return "?";
}

FormalGroupLaw::FormalGroupLaw(FglKind kind, std::vector<FglParameter> params, TruncSeries law, std::string label)
    : kind_(kind), params_(std::move(params)), law_(std::move(law)), label_(std::move(label)) {
  const auto& vars = law_.context()->variables();
  if (vars.size() != params_.size() + 2 || vars[0].name != "x" || vars[1].name != "y") {
    throw FglError("law must live in a context (x, y, parameters...)");
  }
  if (degree() < 1) throw FglError("FGL degree must be >= 1");
}

ContextPtr FormalGroupLaw::single_context(const std::string& var, std::optional<int> degree) const {
  return SeriesContext::make(law_variables(params_, {var}), degree.value_or(this->degree()), scalar_kind());
}

TruncSeries FormalGroupLaw::apply(const TruncSeries& a, const TruncSeries& b) const {
  const ContextPtr& target = a.context();
  std::vector<TruncSeries> images{a, b};
  for (const auto& p : params_) images.push_back(TruncSeries::variable(target, p.name));
  return substitute(law_, target, images);
}

FormalGroupLaw make_additive(int degree) {
  auto ctx = SeriesContext::make(law_variables({}, {"x", "y"}), degree, ScalarKind::integer());
  auto f = TruncSeries::variable(ctx, "x") + TruncSeries::variable(ctx, "y");
  return FormalGroupLaw(FglKind::additive, {}, f, "additive");
}

FormalGroupLaw make_multiplicative(int degree, std::optional<BigInt> beta) {
  std::vector<FglParameter> params;
  if (!beta) params.push_back({"beta", -2});
  auto ctx = SeriesContext::make(law_variables(params, {"x", "y"}), degree, ScalarKind::integer());
  auto x = TruncSeries::variable(ctx, "x");
  auto y = TruncSeries::variable(ctx, "y");
  TruncSeries b = beta ? TruncSeries::constant(ctx, Scalar(*beta)) : TruncSeries::variable(ctx, "beta");
  std::string label = beta ? "multiplicative(beta=" + beta->get_str() + ")" : "multiplicative";
  return FormalGroupLaw(FglKind::multiplicative, params, x + y - b * x * y, label);
}

FormalGroupLaw make_universal(int terms, int degree) {
  if (terms < 1) throw FglError("universal FGL needs at least one logarithm coefficient");
  std::vector<FglParameter> params;
  for (int i = 1; i <= terms; ++i) params.push_back({"m" + std::to_string(i), -2 * i});
  const auto q = ScalarKind::rational();
  auto tctx = SeriesContext::make(law_variables(params, {"t"}), degree, q);
  auto t = TruncSeries::variable(tctx, "t");
  // exp is the compositional inverse of log: g = t - sum m_i g^{i+1}.
  TruncSeries g = t;
  for (int it = 0; it < degree; ++it) {
    TruncSeries next = t;
    TruncSeries power = g;
    for (int i = 1; i <= terms; ++i) {
      power *= g;
      next -= TruncSeries::variable(tctx, params[i - 1].name) * power;
    }
    if (next == g) break;
    g = next;
  }
  auto ctx = SeriesContext::make(law_variables(params, {"x", "y"}), degree, q);
  auto log_of = [&](const std::string& v) {
    TruncSeries s = TruncSeries::variable(ctx, v);
    TruncSeries out = s;
    TruncSeries power = s;
    for (int i = 1; i <= terms; ++i) {
      power *= s;
      out += TruncSeries::variable(ctx, params[i - 1].name) * power;
    }
    return out;
  };
  TruncSeries f = compose(rehome(g, SeriesContext::make(law_variables(params, {"t", "x", "y"}), degree, q)), "t",
                          rehome(log_of("x") + log_of("y"),
                                 SeriesContext::make(law_variables(params, {"t", "x", "y"}), degree, q)));
  f = rehome(f, ctx);
  f = integral_if_possible(f);
  return FormalGroupLaw(FglKind::universal, params, f, "universal(K=" + std::to_string(terms) + ")");
}

FormalGroupLaw parse_fgl_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw FglError("fgl table line " + std::to_string(lineno) + ": " + what);
  };
  bool header = false;
  std::vector<FglParameter> params;
  std::optional<int> degree;
  std::string law_text;
  bool in_law = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header) {
      if (t != "fgl-table 1") fail("expected header 'fgl-table 1'");
      header = true;
      continue;
    }
    auto colon = t.find(':');
    std::string key = colon == std::string::npos ? "" : trim(t.substr(0, colon));
    if (key == "params") {
      in_law = false;
      std::istringstream ps(t.substr(colon + 1));
      std::string item;
      while (std::getline(ps, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) fail("parameter needs name=internal_degree: " + item);
        try {
          params.push_back({trim(item.substr(0, eq)), std::stoi(item.substr(eq + 1))});
        } catch (const std::exception&) {
          fail("bad parameter degree: " + item);
        }
      }
    } else if (key == "degree") {
      in_law = false;
      try {
        degree = std::stoi(t.substr(colon + 1));
      } catch (const std::exception&) {
        fail("bad degree");
      }
    } else if (key == "F") {
      in_law = true;
      law_text = t.substr(colon + 1);
    } else if (in_law) {
      law_text += " " + t;
    } else {
      fail("unknown line: " + t);
    }
  }
  if (!header) throw FglError("empty fgl table");
  if (!degree) throw FglError("fgl table lacks 'degree:'");
  if (trim(law_text).empty()) throw FglError("fgl table lacks 'F:'");
  auto ctx = SeriesContext::make(law_variables(params, {"x", "y"}), *degree, ScalarKind::rational());
  TruncSeries f = integral_if_possible(parse_series(law_text, ctx));
  return FormalGroupLaw(FglKind::user, params, f, "user");
}

FormalGroupLaw load_fgl_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FglError("cannot open fgl table " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fgl_table(buf.str());
}

TruncSeries n_series(const FormalGroupLaw& f, int n) {
  if (n < 0) throw FglError("n-series needs n >= 0");
  auto ctx = f.single_context("x");
  TruncSeries x = TruncSeries::variable(ctx, "x");
  TruncSeries acc(ctx);
  for (int i = 0; i < n; ++i) acc = i == 0 ? x : f.apply(x, acc);
  return acc;
}

std::string FglAxiomReport::describe() const {
  if (ok) return "pass";
  std::string e;
  for (std::size_t i = 0; i < at.size(); ++i) e += (i ? "," : "") + std::to_string(at[i]);
  return "fail at " + axiom + ", coefficient (" + e + "): expected " + expected + ", got " + actual;
}

namespace {

bool first_difference(const TruncSeries& lhs, const TruncSeries& rhs, const std::string& axiom, std::size_t keep,
                      FglAxiomReport& report) {
  TruncSeries diff = lhs - rhs;
  if (diff.is_zero()) return false;
  auto it = diff.ordered_terms().front();
  const Exponents& e = it->first;
  report.ok = false;
  report.axiom = axiom;
  report.at.assign(e.begin(), e.begin() + static_cast<long>(keep));
  report.expected = coefficient_of(rhs, e).to_string();
  report.actual = coefficient_of(lhs, e).to_string();
  return true;
}

}  // namespace

FglAxiomReport check_fgl_axioms(const FormalGroupLaw& f) {
  FglAxiomReport report;
  const TruncSeries& law = f.law();
  const ContextPtr& ctx = law.context();
  const std::size_t np = f.parameters().size();
  auto var = [&](const ContextPtr& c, const std::string& n) { return TruncSeries::variable(c, n); };
  auto params_in = [&](const ContextPtr& c) {
    std::vector<TruncSeries> out;
    for (const auto& p : f.parameters()) out.push_back(var(c, p.name));
    return out;
  };
  auto images = [&](const ContextPtr& c, TruncSeries a, TruncSeries b) {
    std::vector<TruncSeries> out{std::move(a), std::move(b)};
    for (auto& p : params_in(c)) out.push_back(p);
    return out;
  };
  const std::size_t keep = 2 + np;
  TruncSeries x = var(ctx, "x"), y = var(ctx, "y"), zero(ctx);
  if (first_difference(substitute(law, ctx, images(ctx, x, zero)), x, "unitality", keep, report)) return report;
  if (first_difference(substitute(law, ctx, images(ctx, zero, y)), y, "unitality", keep, report)) return report;
  if (first_difference(law, substitute(law, ctx, images(ctx, y, x)), "symmetry", keep, report)) return report;
  std::vector<Variable> vars{{"x", 1, 0, {}}, {"y", 1, 0, {}}, {"z", 1, 0, {}}};
  for (const auto& p : f.parameters()) vars.push_back({p.name, 0, 0, {}});
  auto c3 = SeriesContext::make(vars, f.degree(), f.scalar_kind());
  TruncSeries x3 = var(c3, "x"), y3 = var(c3, "y"), z3 = var(c3, "z");
  TruncSeries left = substitute(law, c3, images(c3, substitute(law, c3, images(c3, x3, y3)), z3));
  TruncSeries right = substitute(law, c3, images(c3, x3, substitute(law, c3, images(c3, y3, z3))));
  first_difference(left, right, "associativity", keep + 1, report);
  return report;
}

}  // namespace mubg
