#include "mubg/tasks.hpp"

#include <filesystem>
#include <sstream>

#include "mubg/error.hpp"
#include "mubg/parallel.hpp"

namespace mubg {

namespace {

Window window_of(const Manifest& m) { return Window{m.floor.value_or(0), m.degree.value_or(0)}; }

CoeffRing ring_of(const Manifest& m) {
  const int power = m.mod_power.value_or(0);
  return power == 0 ? CoeffRing::integers() : CoeffRing::modular(*m.prime, power);
}

std::vector<int> degrees_of(const Manifest& m) {
  std::vector<int> out;
  if (!m.degree_range) return out;
  for (int d = m.degree_range->first; d <= m.degree_range->second; ++d) {
    if (d % 2 == 0) out.push_back(d);
  }
  if (out.empty()) throw BclassError("degree range holds no even degree");
  return out;
}

void header(std::ostream& out, const Manifest& m) {
  out << kReportFormat << "\n";
  out << "task: " << to_string(m.task) << "\n";
}

TaskOutput run_pseries(const Manifest& m) {
  FormalGroupLaw f = build_fgl(m, *m.degree);
  const int n = m.multiple.value_or(m.prime.value_or(0));
  std::ostringstream out;
  header(out, m);
  out << "fgl: " << f.label() << "\n";
  out << "degree: " << *m.degree << "\n";
  out << "F(x,y) = " << to_text(f.law()) << "\n";
  FglAxiomReport axioms = check_fgl_axioms(f);
  out << "axioms: " << (axioms.ok ? "ok" : axioms.describe()) << "\n";
  out << "[" << n << "](x) = " << to_text(n_series(f, n)) << "\n";
  return {out.str(), axioms.ok ? kExitOk : kExitVerification};
}

TaskOutput run_tate(const Manifest& m, unsigned threads) {
  FormalGroupLaw f = build_fgl(m, *m.degree);
  TatePresentation t = tate_kernel_cokernel(f, *m.prime, window_of(m), ring_of(m), degrees_of(m), threads);
  std::ostringstream out;
  header(out, m);
  out << t.describe();
  return {out.str(), t.verified() ? kExitOk : kExitVerification};
}

TaskOutput run_locss(const Manifest& m, unsigned threads) {
  FormalGroupLaw f = build_fgl(m, *m.degree);
  CoeffRing ring = ring_of(m);
  CechComplex complex(QuotientModel(f, *m.prime, m.variables, 0, window_of(m), ring), m.sign);
  std::vector<int> degrees = degrees_of(m);
  if (degrees.empty()) degrees = complex.base().default_degrees();
  std::ostringstream out;
  header(out, m);
  out << "model: " << complex.base().describe() << "\n";
  out << "sign rule: " << to_string(m.sign) << "\n";
  std::vector<char> ok(degrees.size(), 0);
  parallel_for(
      degrees.size(), [&](std::size_t k) { ok[k] = d_squared_zero(complex.at(degrees[k], false), ring); }, threads);
  bool all = true;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    out << "degree " << degrees[k] << ": d o d " << (ok[k] ? "= 0" : "!= 0") << "\n";
    all = all && ok[k];
  }
  if (!all) {
    out << "d o d = 0: no\n";
    return {out.str(), kExitVerification};
  }
  out << "d o d = 0: yes\n";
  out << compute_e2(complex, degrees, threads).describe();
  return {out.str(), kExitOk};
}

TaskOutput run_collapse(const Manifest& m, unsigned threads) {
  if (m.floor.value_or(0) >= 0) throw BclassError("collapse needs a negative window floor");
  FormalGroupLaw f = build_fgl(m, *m.degree);
  CollapseCertificate c = collapse_witness(f, *m.prime, window_of(m), ring_of(m), degrees_of(m), threads);
  std::ostringstream out;
  header(out, m);
  out << c.describe();
  return {out.str(), c.holds() ? kExitOk : kExitVerification};
}

TaskOutput run_kappa(const Manifest& m, unsigned threads) {
  NonvanishingCertificate cert = nonvanishing_test(m.fixed, threads);
  std::ostringstream out;
  header(out, m);
  out << cert.describe();
  return {out.str(), kExitOk};
}

TaskOutput run_integrality(const Manifest& m) {
  const AbelianGroup& g = *m.group;
  const ScalarKind kind = ScalarKind::cyclotomic(g.exponent());
  std::vector<Element> elements;
  std::vector<Scalar> values;
  for (const auto& pt : m.points) {
    elements.push_back(pt.at);
    values.push_back(parse_scalar(pt.value, kind));
  }
  IntegralityVerdict v = integrality_test(g, elements, values);
  std::ostringstream out;
  header(out, m);
  out << "group: " << g.describe() << "\n";
  out << v.describe(g);
  return {out.str(), kExitOk};
}

}  // namespace

FormalGroupLaw build_fgl(const Manifest& m, int degree) {
  const FglOptions& s = m.fgl;
  if (s.kind == "additive") return make_additive(degree);
  if (s.kind == "multiplicative") return make_multiplicative(degree, s.beta);
  if (s.kind == "universal") return make_universal(s.log_terms, degree);
  if (s.kind == "table") {
    std::filesystem::path path(s.table);
    if (path.is_relative()) path = std::filesystem::path(m.base_dir) / path;
    return load_fgl_table(path.string());
  }
  throw FglError("unknown fgl kind '" + s.kind + "'");
}

TaskOutput run_task(const Manifest& m, unsigned threads) {
  switch (m.task) {
    case Task::pseries: return run_pseries(m);
    case Task::tate: return run_tate(m, threads);
    case Task::locss: return run_locss(m, threads);
    case Task::collapse: return run_collapse(m, threads);
    case Task::kappa: return run_kappa(m, threads);
    case Task::integrality: return run_integrality(m);
  }
  throw Error("cli", "unhandled task");
}

}  // namespace mubg
