#include <sstream>

#include "mubg/error.hpp"
#include "mubg/series.hpp"

namespace mubg {

SeriesContext::SeriesContext(std::vector<Variable> vars, int degree, ScalarKind kind)
    : vars_(std::move(vars)), degree_(degree), kind_(kind) {
  if (degree_ < 0) throw SeriesError("truncation degree must be >= 0");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.name.empty()) throw SeriesError("empty variable name");
    if (v.floor > 0) throw SeriesError("variable floor must be <= 0: " + v.name);
    if (v.weight < 0) throw SeriesError("variable weight must be >= 0: " + v.name);
    if (v.cap && *v.cap < 0) throw SeriesError("variable cap must be >= 0: " + v.name);
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[j].name == v.name) throw SeriesError("duplicate variable " + v.name);
    }
  }
}

std::optional<std::size_t> SeriesContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SeriesContext::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw SeriesError("unknown variable " + std::string(name));
  return *i;
}

int SeriesContext::weighted_degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) d += vars_[i].weight * e[i];
  return d;
}

bool SeriesContext::admits(const Exponents& e) const {
  if (e.size() != vars_.size()) return false;
  int d = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (e[i] < vars_[i].floor) return false;
    if (vars_[i].cap && e[i] > *vars_[i].cap) return false;
    d += vars_[i].weight * e[i];
  }
  return d <= degree_;
}

ContextPtr SeriesContext::with_degree(int degree) const { return make(vars_, degree, kind_); }

ContextPtr SeriesContext::with_kind(const ScalarKind& kind) const { return make(vars_, degree_, kind); }

std::string SeriesContext::describe() const {
  std::ostringstream out;
  out << "vars(";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out << ", ";
    out << vars_[i].name << ":" << vars_[i].weight;
    if (vars_[i].floor != 0) out << " floor " << vars_[i].floor;
    if (vars_[i].cap) out << " cap " << *vars_[i].cap;
  }
  out << ") degree <= " << degree_ << " over " << kind_.to_string();
  return out.str();
}

}  // namespace mubg
