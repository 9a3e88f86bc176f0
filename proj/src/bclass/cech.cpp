#include <algorithm>
#include <bit>
#include <sstream>

#include "mubg/bclass.hpp"
#include "mubg/error.hpp"
#include "mubg/parallel.hpp"

namespace mubg {

std::string to_string(SignRule rule) { return rule == SignRule::standard ? "standard" : "literal"; }

int cech_sign(unsigned from, int mu, SignRule rule) {
  const int size_after = std::popcount(from) + 1;
  int exponent = 0;
  if (rule == SignRule::literal) {
    exponent = size_after * mu;
  } else {
    int above = 0;
    for (int s = mu + 1; s <= 32; ++s) {
      if ((from >> (s - 1)) & 1u) ++above;
    }
    exponent = mu + above;
  }
  return exponent % 2 == 0 ? 1 : -1;
}

namespace {

std::vector<int> labels(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if ((mask >> i) & 1u) out.push_back(i + 1);
  }
  return out;
}

}  // namespace

CechComplex::CechComplex(const QuotientModel& base, SignRule rule) : base_(base.with_inverted(0)), rule_(rule) {
  const int n = base_.variables();
  subsets_.resize(static_cast<std::size_t>(n + 1));
  for (unsigned mask = 0; mask < (1u << n); ++mask) subsets_[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
  for (auto& col : subsets_) {
    std::sort(col.begin(), col.end(), [](unsigned a, unsigned b) { return labels(a) < labels(b); });
  }
  for (unsigned mask = 0; mask < (1u << n); ++mask) models_.emplace(mask, base_.with_inverted(mask));
}

CechComplex::Degree CechComplex::at(int degree, bool with_relations) const {
  const int n = base_.variables();
  const CoeffRing& ring = base_.ring();
  Degree out;
  out.degree = degree;
  out.blocks.resize(static_cast<std::size_t>(n + 1));
  std::vector<std::map<unsigned, std::size_t>> offsets(static_cast<std::size_t>(n + 1));
  for (int s = 0; s <= n; ++s) {
    std::size_t dim = 0;
    for (unsigned mask : subsets(s)) {
      offsets[static_cast<std::size_t>(s)][mask] = dim;
      out.blocks[static_cast<std::size_t>(s)].push_back(model(mask).block(degree, with_relations));
      dim += out.blocks[static_cast<std::size_t>(s)].back().size();
    }
    out.dims.push_back(dim);
    if (!with_relations) continue;
    std::vector<const Submodule*> parts;
    for (const auto& blk : out.blocks[static_cast<std::size_t>(s)]) parts.push_back(&blk.relations);
    out.relations.push_back(Submodule::direct_sum(ring, parts));
  }
  for (int s = 0; s < n; ++s) {
    const auto su = static_cast<std::size_t>(s);
    std::vector<SparseRow> d(out.dims[su]);
    for (std::size_t i = 0; i < subsets(s).size(); ++i) {
      const unsigned from = subsets(s)[i];
      const auto& src = out.blocks[su][i];
      const std::size_t src_off = offsets[su].at(from);
      for (int v = 0; v < n; ++v) {
        if ((from >> v) & 1u) continue;
        const unsigned to = from | (1u << v);
        const auto pos = static_cast<std::size_t>(
            std::find(subsets(s + 1).begin(), subsets(s + 1).end(), to) - subsets(s + 1).begin());
        const auto& dst = out.blocks[su + 1][pos];
        const std::size_t dst_off = offsets[su + 1].at(to);
        const int sign = cech_sign(from, v + 1, rule_);
        for (std::size_t k = 0; k < src.size(); ++k) {
          auto idx = dst.find(src.monomials[k]);
          if (!idx) throw BclassError("monomial missing in the localized basis");
          d[src_off + k].emplace_back(dst_off + *idx,
                                      ring.is_modular() ? ring.normalize(BigInt(sign)) : BigInt(sign));
        }
      }
    }
    for (auto& row : d) std::sort(row.begin(), row.end());
    out.d.push_back(std::move(d));
  }
  return out;
}

std::vector<IntVector> CechComplex::Degree::dense(int s) const {
  const auto su = static_cast<std::size_t>(s);
  std::vector<IntVector> out(dims[su], IntVector(dims[su + 1]));
  for (std::size_t i = 0; i < d[su].size(); ++i) {
    for (const auto& [j, v] : d[su][i]) out[i][j] = v;
  }
  return out;
}

bool d_squared_zero(const CechComplex::Degree& data, const CoeffRing& ring) {
  for (std::size_t s = 0; s + 1 < data.d.size(); ++s) {
    for (const auto& row : data.d[s]) {
      std::map<std::size_t, BigInt> acc;
      for (const auto& [k, a] : row) {
        for (const auto& [j, b] : data.d[s + 1][k]) acc[j] += a * b;
      }
      for (const auto& [j, v] : acc) {
        if (ring.normalize(v) != 0) return false;
      }
    }
  }
  return true;
}

std::string E2Table::describe() const {
  std::ostringstream out;
  out << "stability margin: " << stability_margin << "\n";
  for (const auto& e : entries) {
    out << "E2 column " << e.column << " degree " << e.degree << ": " << format_invariants(e.invariants) << "\n";
  }
  return out.str();
}

E2Table compute_e2(const CechComplex& complex, const std::vector<int>& degrees, unsigned threads) {
  const int n = complex.base().variables();
  const CoeffRing& ring = complex.base().ring();
  std::vector<std::vector<E2Entry>> per_degree(degrees.size());
  parallel_for(
      degrees.size(),
      [&](std::size_t k) {
        CechComplex::Degree data = complex.at(degrees[k]);
        for (int s = 0; s <= n; ++s) {
          const auto su = static_cast<std::size_t>(s);
          Submodule cycles = s == n ? Submodule::full(ring, data.dims[su])
                                    : Submodule::preimage(data.dense(s), data.relations[su + 1]);
          std::vector<IntVector> bound = data.relations[su].rows();
          if (s > 0) {
            for (auto& r : data.dense(s - 1)) bound.push_back(std::move(r));
          }
          Submodule boundaries(ring, data.dims[su], bound);
          per_degree[k].push_back({-s, degrees[k], cycles.quotient_invariants(boundaries)});
        }
      },
      threads);
  E2Table table;
  table.stability_margin = 2 * complex.base().prime();
  for (int s = 0; s <= n; ++s) {
    for (const auto& entries : per_degree) table.entries.push_back(entries[static_cast<std::size_t>(s)]);
  }
  return table;
}

}  // namespace mubg
