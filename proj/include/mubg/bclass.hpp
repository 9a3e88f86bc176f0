#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mubg/fgl.hpp"
#include "mubg/submodule.hpp"

namespace mubg {

// Exponent floor L (<= 0, used by inverted variables) and ceiling D on the
// internal degree 2*sum(e) of the Euler-class part of a monomial.
struct Window {
  int floor = 0;
  int ceiling = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

// One internal degree of a quotient model: a free module on window
// monomials together with the relation module generated by [p](x_v)*g.
// Monomials are exponent vectors (x_1..x_n, then the FGL parameters).
struct ModelBlock {
  int degree = 0;
  std::vector<Exponents> monomials;
  std::map<Exponents, std::size_t> index;
  std::vector<IntVector> relation_rows;  // raw generators
  Submodule relations;

  std::size_t size() const { return monomials.size(); }
  std::optional<std::size_t> find(const Exponents& e) const;
  // Canonical reduced representative.
  IntVector reduce(const IntVector& v) const { return relations.reduce(v); }
};

// Polynomial in the model variables with integer coefficients.
using Poly = std::map<Exponents, BigInt>;

class QuotientModel {
 public:
  QuotientModel(const FormalGroupLaw& f, int p, int n, unsigned inverted, Window window, CoeffRing ring,
                std::size_t size_cap = 20000);

  const FormalGroupLaw& fgl() const { return fgl_; }
  int prime() const { return p_; }
  int variables() const { return n_; }
  unsigned inverted() const { return inverted_; }
  bool is_inverted(int v) const { return (inverted_ >> v) & 1u; }
  const Window& window() const { return window_; }
  const CoeffRing& ring() const { return ring_; }
  // x, y, z, w for n <= 4, else x1..xn; then the parameter names.
  const std::vector<std::string>& names() const { return names_; }
  std::size_t arity() const { return names_.size(); }
  // Internal degree of each variable (2 for x_v, the parameter degrees).
  const std::vector<int>& grading() const { return grading_; }
  int internal_degree(const Exponents& e) const;

  // [p](t) as a polynomial in (t, parameters), exact up to the powers the
  // window can reach.
  const std::vector<std::pair<int, Poly>>& p_series() const { return pseries_; }
  // [p](x_v) and [p](x_v)/x_v as model polynomials.
  Poly p_series_in(int v) const;
  Poly p_series_over_x(int v) const;
  // Coefficient c_j of t^j in [p](t) as a polynomial in the parameters.
  Poly p_series_coefficient(int j) const;

  // Default internal degree range [2nL, D], even degrees.
  std::vector<int> default_degrees() const;
  // Without relations the block carries an empty relation module.
  ModelBlock block(int degree, bool with_relations = true) const;
  // Monomials in the parameters alone of the given internal degree.
  std::vector<Exponents> parameter_monomials(int degree) const;

  // Product truncated to the window; terms that leave the window are dropped.
  Poly multiply(const Poly& a, const Poly& b) const;
  bool in_window(const Exponents& e) const;
  // Coordinates of a homogeneous polynomial in a block (throws when a term
  // has the wrong degree or lies outside the basis).
  IntVector to_vector(const Poly& a, const ModelBlock& block) const;
  Poly to_poly(const IntVector& v, const ModelBlock& block) const;
  std::string render(const Poly& a) const;
  std::string render(const IntVector& v, const ModelBlock& block) const { return render(to_poly(v, block)); }

  // Same model with another inverted set.
  QuotientModel with_inverted(unsigned inverted) const;
  std::string describe() const;

 private:
  // Calls fn(e) for every monomial of the given internal degree whose x
  // exponents are at least `floors` and have 2*sum <= ceiling.
  template <class Fn>
  void enumerate(const std::vector<int>& floors, int ceiling, int degree, Fn&& fn) const;

  FormalGroupLaw fgl_;
  int p_;
  int n_;
  unsigned inverted_;
  Window window_;
  CoeffRing ring_;
  std::size_t size_cap_;
  std::vector<std::string> names_;
  std::vector<int> grading_;
  std::vector<std::pair<int, Poly>> pseries_;  // (power of t, coefficient in parameters)
};

// Matrix of the inclusion src -> dst in one degree: one row per src
// monomial, in dst coordinates.
std::vector<IntVector> localization_map(const QuotientModel& src, const QuotientModel& dst, int degree);
std::vector<IntVector> localization_map(const QuotientModel& src, const ModelBlock& src_block,
                                        const QuotientModel& dst, const ModelBlock& dst_block);

// Product of two maps given as row lists.
std::vector<IntVector> compose_maps(const std::vector<IntVector>& first, const std::vector<IntVector>& second,
                                    std::size_t target_dim, const CoeffRing& ring);

enum class SignRule {
  // (-1)^{mu + #{s in S : s > mu}}; d o d = 0 for every n.
  standard,
  // (-1)^{#S' * mu}; d o d = 0 only for n <= 2.
  literal,
};

std::string to_string(SignRule rule);

// Sorted (column, value) pairs of the nonzero entries of a row.
using SparseRow = std::vector<std::pair<std::size_t, BigInt>>;

// Subsets are bit masks over the variables; labels of variables are 1..n.
int cech_sign(unsigned from, int mu, SignRule rule);

// Cech complex of the localizations of one model, column s holding the
// subsets of size s (column index -s in the report).
class CechComplex {
 public:
  CechComplex(const QuotientModel& base, SignRule rule = SignRule::standard);

  const QuotientModel& base() const { return base_; }
  SignRule sign_rule() const { return rule_; }
  int columns() const { return base_.variables() + 1; }
  // Subsets of size s, ascending as sorted label lists.
  const std::vector<unsigned>& subsets(int s) const { return subsets_[static_cast<std::size_t>(s)]; }
  const QuotientModel& model(unsigned subset) const { return models_.at(subset); }

  struct Degree {
    int degree = 0;
    std::vector<std::vector<ModelBlock>> blocks;  // [s][i] for subsets(s)[i]
    std::vector<std::size_t> dims;                // total dimension of column s
    std::vector<std::vector<SparseRow>> d;        // d[s]: column s -> column s+1
    std::vector<Submodule> relations;             // relation module of column s; empty without relations

    std::vector<IntVector> dense(int s) const;
  };
  Degree at(int degree, bool with_relations = true) const;

 private:
  QuotientModel base_;
  SignRule rule_;
  std::vector<std::vector<unsigned>> subsets_;
  std::map<unsigned, QuotientModel> models_;
};

// True when d[s+1] * d[s] vanishes exactly for every s (on the free
// modules, hence also on the quotients).
bool d_squared_zero(const CechComplex::Degree& data, const CoeffRing& ring);

struct E2Entry {
  int column = 0;  // 0, -1, ..., -n
  int degree = 0;
  IntVector invariants;
};

struct E2Table {
  std::vector<E2Entry> entries;  // by column (descending), then degree
  int stability_margin = 0;      // 2p
  std::string describe() const;
};

E2Table compute_e2(const CechComplex& complex, const std::vector<int>& degrees, unsigned threads = 0);

// Presentation of the cokernel and kernel of MU*[[x]]/[p] -> MU*((x))/[p].
struct TateDegreeCheck {
  int degree = 0;
  bool relations_match = false;  // recovered relation lattice == expected rows
  IntVector snf_invariants;      // raw localization matrix, Smith form
  IntVector presentation_invariants;
  bool snf_match = false;
  bool kernel_match = false;  // kernel == ideal of [p]/x
  bool kernel_free = false;   // MU_* * ([p]/x) free
};

struct TatePresentation {
  std::string fgl;
  int p = 0;
  Window window;
  std::string ring;
  std::vector<std::string> generators;  // unit, y1, ...
  std::string kernel_generator;         // [p](x)/x
  std::vector<std::string> relations;   // p*y_i + a_1*y_{i-1} + ...
  std::vector<std::string> a_coefficients;  // a_j = coefficient of x^{j+1}
  std::vector<TateDegreeCheck> checks;
  bool verified() const;
  std::string describe() const;
};

TatePresentation tate_kernel_cokernel(const FormalGroupLaw& f, int p, Window window,
                                      CoeffRing ring = CoeffRing::integers(), std::vector<int> degrees = {},
                                      unsigned threads = 0);

struct CollapseDegree {
  int degree = 0;
  bool kernel_in_ideal = false;
  bool ideal_in_kernel = false;
  IntVector kernel_invariants;  // kernel / relations
  IntVector ideal_invariants;   // ideal / relations
  std::optional<std::string> counterexample;
};

struct CollapseCertificate {
  std::string fgl;
  int p = 0;
  Window window;
  std::string ring;
  std::string generator;  // (p_F(x)/x)(p_F(y)/y)
  std::vector<CollapseDegree> degrees;
  bool holds() const;
  std::string describe() const;
};

// `tamper` perturbs d_1 for negative controls: it receives the map rows.
CollapseCertificate collapse_witness(const FormalGroupLaw& f, int p, Window window,
                                     CoeffRing ring, std::vector<int> degrees = {}, unsigned threads = 0,
                                     void (*tamper)(std::vector<IntVector>&) = nullptr);

}  // namespace mubg
