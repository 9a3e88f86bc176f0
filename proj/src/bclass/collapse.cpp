#include <sstream>

#include "mubg/bclass.hpp"
#include "mubg/error.hpp"
#include "mubg/parallel.hpp"

namespace mubg {

bool CollapseCertificate::holds() const {
  for (const auto& d : degrees) {
    if (!d.kernel_in_ideal || !d.ideal_in_kernel || d.kernel_invariants != d.ideal_invariants) return false;
  }
  return !degrees.empty();
}

std::string CollapseCertificate::describe() const {
  std::ostringstream out;
  out << "collapse witness: " << fgl << " p=" << p << " window=[" << window.floor << "," << window.ceiling
      << "] over " << ring << "\n";
  out << "generator: " << generator << "\n";
  for (const auto& d : degrees) {
    out << "degree " << d.degree << ": kernel " << format_invariants(d.kernel_invariants) << ", ideal "
        << format_invariants(d.ideal_invariants) << ", kernel in ideal " << (d.kernel_in_ideal ? "yes" : "no")
        << ", ideal in kernel " << (d.ideal_in_kernel ? "yes" : "no");
    if (d.counterexample) out << ", counterexample " << *d.counterexample;
    out << "\n";
  }
  out << "holds: " << (holds() ? "yes" : "no") << "\n";
  return out.str();
}

CollapseCertificate collapse_witness(const FormalGroupLaw& f, int p, Window window, CoeffRing ring,
                                     std::vector<int> degrees, unsigned threads,
                                     void (*tamper)(std::vector<IntVector>&)) {
  CechComplex complex(QuotientModel(f, p, 2, 0, window, ring));
  const QuotientModel& base = complex.base();
  if (degrees.empty()) degrees = base.default_degrees();
  const Poly gen = base.multiply(base.p_series_over_x(0), base.p_series_over_x(1));

  CollapseCertificate out;
  out.fgl = f.label();
  out.p = p;
  out.window = window;
  out.ring = ring.to_string();
  out.generator = base.render(gen);
  out.degrees.resize(degrees.size());
  parallel_for(
      degrees.size(),
      [&](std::size_t k) {
        CollapseDegree& res = out.degrees[k];
        res.degree = degrees[k];
        CechComplex::Degree data = complex.at(degrees[k]);
        const ModelBlock& b0 = data.blocks[0][0];
        std::vector<IntVector> d1 = data.dense(0);
        if (tamper) tamper(d1);
        Submodule kernel = Submodule::preimage(d1, data.relations[1]);
        std::vector<IntVector> ideal_rows = b0.relation_rows;
        for (const auto& m : b0.monomials) {
          ideal_rows.push_back(base.to_vector(base.multiply({{m, BigInt(1)}}, gen), b0));
        }
        Submodule ideal(ring, b0.size(), ideal_rows);
        res.kernel_in_ideal = ideal.contains(kernel);
        res.ideal_in_kernel = kernel.contains(ideal);
        if (kernel.contains(b0.relations)) res.kernel_invariants = kernel.quotient_invariants(b0.relations);
        res.ideal_invariants = ideal.quotient_invariants(b0.relations);
        for (const auto& r : kernel.rows()) {
          if (!ideal.contains(r)) {
            res.counterexample = "kernel element " + base.render(r, b0) + " outside the ideal";
            return;
          }
        }
        for (const auto& r : ideal.rows()) {
          if (!kernel.contains(r)) {
            res.counterexample = "ideal element " + base.render(r, b0) + " outside the kernel";
            return;
          }
        }
      },
      threads);
  return out;
}

}  // namespace mubg
