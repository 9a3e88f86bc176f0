#include <algorithm>
#include <sstream>

#include "mubg/bclass.hpp"
#include "mubg/error.hpp"
#include "mubg/parallel.hpp"

namespace mubg {

namespace {

// Invariants of R^cols / rowspan by Smith form, in Submodule's convention.
IntVector snf_cokernel(const std::vector<IntVector>& rows, std::size_t cols, const CoeffRing& ring) {
  IntVector torsion;
  std::size_t rank = 0;
  BigInt free_value(0);
  if (ring.is_modular()) {
    ModularSmith s = modular_smith(rows, cols, ring);
    BigInt p(ring.p);
    for (int v : s.valuations) {
      ++rank;
      if (v > 0) {
        BigInt q;
        mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v));
        torsion.push_back(q);
      }
    }
    free_value = BigInt(static_cast<long>(ring.modulus()));
  } else {
    for (const auto& d : smith_invariants(IntMatrix::from_rows(rows, cols))) {
      if (d == 0) continue;
      ++rank;
      if (d != 1) torsion.push_back(d);
    }
  }
  std::sort(torsion.begin(), torsion.end());
  for (std::size_t i = rank; i < cols; ++i) torsion.push_back(free_value);
  return torsion;
}

}  // namespace

bool TatePresentation::verified() const {
  for (const auto& c : checks) {
    if (!c.relations_match || !c.snf_match || !c.kernel_match || !c.kernel_free) return false;
  }
  return !checks.empty();
}

std::string TatePresentation::describe() const {
  std::ostringstream out;
  out << "tate presentation: " << fgl << " p=" << p << " window=[" << window.floor << "," << window.ceiling
      << "] over " << ring << "\n";
  out << "generators:";
  for (const auto& g : generators) out << " " << g;
  out << "\n";
  out << "unit -> " << kernel_generator << "\n";
  for (std::size_t j = 0; j < a_coefficients.size(); ++j) out << "a" << j + 1 << " = " << a_coefficients[j] << "\n";
  for (const auto& r : relations) out << "relation: " << r << " = 0\n";
  for (const auto& c : checks) {
    out << "degree " << c.degree << ": relations " << (c.relations_match ? "ok" : "MISMATCH") << ", cokernel "
        << format_invariants(c.snf_invariants) << " (SNF) vs " << format_invariants(c.presentation_invariants)
        << " (presentation) " << (c.snf_match ? "ok" : "MISMATCH") << ", kernel "
        << (c.kernel_match ? "= ([p]/x)" : "MISMATCH") << ", " << (c.kernel_free ? "free" : "NOT FREE") << "\n";
  }
  out << "verified: " << (verified() ? "yes" : "no") << "\n";
  return out.str();
}

TatePresentation tate_kernel_cokernel(const FormalGroupLaw& f, int p, Window window, CoeffRing ring,
                                      std::vector<int> degrees, unsigned threads) {
  if (window.floor >= 0) throw BclassError("tate needs a negative window floor");
  QuotientModel base(f, p, 1, 0, window, ring);
  QuotientModel local = base.with_inverted(1);
  const int depth = -window.floor;
  if (degrees.empty()) {
    for (int d = 2 * window.floor; d <= window.ceiling; d += 2) degrees.push_back(d);
  }

  TatePresentation out;
  out.fgl = f.label();
  out.p = p;
  out.window = window;
  out.ring = ring.to_string();
  out.generators.push_back("unit");
  for (int i = 1; i <= depth; ++i) out.generators.push_back("y" + std::to_string(i));
  out.kernel_generator = base.render(base.p_series_over_x(0));

  // a_j is the coefficient of x^{j+1}: the negative part of x^{-i-1}[p](x).
  std::vector<Poly> c(static_cast<std::size_t>(depth + 1));
  for (int j = 1; j <= depth; ++j) c[static_cast<std::size_t>(j)] = base.p_series_coefficient(j);
  for (int j = 1; j < depth; ++j) out.a_coefficients.push_back(base.render(c[static_cast<std::size_t>(j + 1)]));
  {
    std::vector<Variable> vars;
    for (int i = 1; i <= depth; ++i) vars.push_back({"y" + std::to_string(i), 1, 0, {}});
    for (std::size_t k = 1; k < base.arity(); ++k) vars.push_back({base.names()[k], 0, 0, {}});
    auto ctx = SeriesContext::make(vars, 1, ScalarKind::integer());
    for (int i = 1; i <= depth; ++i) {
      TruncSeries row(ctx);
      for (int j = 0; j < i; ++j) {
        for (const auto& [e, coeff] : c[static_cast<std::size_t>(j + 1)]) {
          Exponents t(vars.size(), 0);
          t[static_cast<std::size_t>(i - j - 1)] = 1;
          for (std::size_t k = 1; k < base.arity(); ++k) t[static_cast<std::size_t>(depth) + k - 1] = e[k];
          row.add_term(t, Scalar(coeff));
        }
      }
      out.relations.push_back(to_text(row));
    }
  }

  out.checks.resize(degrees.size());
  parallel_for(
      degrees.size(),
      [&](std::size_t k) {
        const int deg = degrees[k];
        TateDegreeCheck& chk = out.checks[k];
        chk.degree = deg;
        ModelBlock b0 = base.block(deg);
        ModelBlock b1 = local.block(deg);
        auto loc = localization_map(base, b0, local, b1);

        // Negative monomials span the cokernel; project the relations.
        std::vector<std::size_t> neg;
        std::map<Exponents, std::size_t> neg_index;
        for (std::size_t i = 0; i < b1.size(); ++i) {
          if (b1.monomials[i][0] < 0) {
            neg_index.emplace(b1.monomials[i], neg.size());
            neg.push_back(i);
          }
        }
        std::vector<IntVector> projected;
        for (const auto& r : b1.relation_rows) {
          IntVector v(neg.size());
          for (std::size_t i = 0; i < neg.size(); ++i) v[i] = r[neg[i]];
          projected.push_back(std::move(v));
        }
        Submodule recovered(ring, neg.size(), projected);

        // Expected rows: mu * (sum_j c_{j+1} y_{i-j}) for parameter monomials mu.
        std::vector<IntVector> expected;
        for (int i = 1; i <= depth; ++i) {
          for (const auto& mu : base.parameter_monomials(deg + 2 * i)) {
            IntVector v(neg.size());
            bool outside = false;
            for (int j = 0; j < i; ++j) {
              for (const auto& [e, coeff] : c[static_cast<std::size_t>(j + 1)]) {
                Exponents t = mu;
                t[0] = -(i - j);
                for (std::size_t q = 1; q < t.size(); ++q) t[q] += e[q];
                auto it = neg_index.find(t);
                if (it == neg_index.end()) {
                  outside = true;
                  continue;
                }
                v[it->second] += coeff;
              }
            }
            if (outside) throw BclassError("expected relation leaves the window");
            if (ring.is_modular()) {
              for (auto& x : v) x = ring.normalize(x);
            }
            expected.push_back(std::move(v));
          }
        }
        Submodule predicted(ring, neg.size(), expected);
        chk.relations_match = recovered == predicted;

        std::vector<IntVector> raw = loc;
        raw.insert(raw.end(), b1.relation_rows.begin(), b1.relation_rows.end());
        chk.snf_invariants = snf_cokernel(raw, b1.size(), ring);
        chk.presentation_invariants = snf_cokernel(expected, neg.size(), ring);
        chk.snf_match = chk.snf_invariants == chk.presentation_invariants;

        // Kernel of the localization against the ideal of [p]/x.
        Submodule kernel = Submodule::preimage(loc, b1.relations);
        const Poly gen = base.p_series_over_x(0);
        std::vector<IntVector> ideal = b0.relation_rows;
        std::vector<IntVector> free_part = b0.relation_rows;
        std::size_t count = 0;
        for (const auto& m : b0.monomials) {
          IntVector v = base.to_vector(base.multiply({{m, BigInt(1)}}, gen), b0);
          ideal.push_back(v);
          if (m[0] == 0) {
            free_part.push_back(v);
            ++count;
          }
        }
        chk.kernel_match = kernel == Submodule(ring, b0.size(), ideal);
        IntVector inv = Submodule(ring, b0.size(), free_part).quotient_invariants(b0.relations);
        BigInt free_value = ring.is_modular() ? BigInt(static_cast<long>(ring.modulus())) : BigInt(0);
        chk.kernel_free = inv.size() == count && std::all_of(inv.begin(), inv.end(),
                                                             [&](const BigInt& x) { return x == free_value; });
      },
      threads);
  return out;
}

}  // namespace mubg
