#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mubg/series.hpp"

namespace mubg {

enum class FglKind { additive, multiplicative, universal, user };

std::string to_string(FglKind kind);

// A coefficient symbol of the base ring together with its internal degree
// (beta: -2, m_i: -2i).
struct FglParameter {
  std::string name;
  int internal_degree = 0;
};

// A formal group law F(x, y) truncated at total power D in x and y. The
// series lives in a context holding x, y (weight 1) and the parameters
// (weight 0).
class FormalGroupLaw {
 public:
  FormalGroupLaw(FglKind kind, std::vector<FglParameter> params, TruncSeries law, std::string label);

  FglKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  int degree() const { return law_.context()->degree(); }
  const ScalarKind& scalar_kind() const { return law_.context()->kind(); }
  const std::vector<FglParameter>& parameters() const { return params_; }
  const TruncSeries& law() const { return law_; }

  // Context with variable `var` (weight 1) plus the parameters, at power
  // bound `degree` (default: the law's own).
  ContextPtr single_context(const std::string& var = "x", std::optional<int> degree = {}) const;

  // F(a, b) for series in a context containing the parameters by name.
  TruncSeries apply(const TruncSeries& a, const TruncSeries& b) const;

 private:
  FglKind kind_;
  std::vector<FglParameter> params_;
  TruncSeries law_;
  std::string label_;
};

FormalGroupLaw make_additive(int degree);
// Symbolic beta when `beta` is empty; otherwise beta is specialized.
FormalGroupLaw make_multiplicative(int degree, std::optional<BigInt> beta = {});
// log(t) = t + m_1 t^2 + ... + m_K t^{K+1}; F = exp(log x + log y).
FormalGroupLaw make_universal(int terms, int degree);

// "fgl-table 1" files: a header line, then "params:", "degree:" and "F:"
// lines. The F text may continue on following lines.
FormalGroupLaw parse_fgl_table(std::string_view text);
FormalGroupLaw load_fgl_table(const std::string& path);

// [n](x) in single_context("x").
TruncSeries n_series(const FormalGroupLaw& f, int n);

struct FglAxiomReport {
  bool ok = true;
  std::string axiom;  // unitality, symmetry or associativity
  Exponents at;       // exponents in the variables of the checked identity
  std::string expected;
  std::string actual;

  std::string describe() const;
};

FglAxiomReport check_fgl_axioms(const FormalGroupLaw& f);

}  // namespace mubg
