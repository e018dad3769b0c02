#pragma once

// Surgery calculus on invariant tables: the coefficients u_{m,k}, the
// alternating transform along a Lagrangian sphere class, its multi-sphere
// refined version, and checkers for the binomial identities behind them.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "refinv/invariants.hpp"
#include "refinv/laurent.hpp"

namespace refinv {

using ClassVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntersectionForm = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

ClassVector make_class(std::initializer_list<std::int64_t> coords);
std::vector<std::int64_t> class_key(const ClassVector& c);
std::string to_string(const ClassVector& c);

/// H_2 with its intersection form and first Chern class.
class ClassLattice {
 public:
  /// Throws std::invalid_argument unless `form` is square, symmetric and
  /// matches the rank of `c1`.
  ClassLattice(IntersectionForm form, ClassVector c1);

  /// Basis (class of the rectangle of width 1, class of the rectangle of
  /// height 1); the rectangle a x b has class (a, b), c1 = (2, 2).
  static ClassLattice quadric();
  /// Basis L, E_1, ..., E_points; c1 = 3L - sum E_i.
  static ClassLattice blown_up_plane(int points);

  int rank() const { return static_cast<int>(form_.rows()); }
  const IntersectionForm& form() const { return form_; }
  std::int64_t dot(const ClassVector& a, const ClassVector& b) const;
  std::int64_t c1_dot(const ClassVector& a) const { return dot(c1_, a); }
  const ClassVector& c1() const { return c1_; }

  void name(const std::string& label, ClassVector c);
  const ClassVector& named(const std::string& label) const;

  bool is_lagrangian_sphere(const ClassVector& s) const;
  bool is_exceptional(const ClassVector& e) const;

 private:
  void check_rank(const ClassVector& c) const;

  IntersectionForm form_;
  ClassVector c1_;
  std::map<std::string, ClassVector> names_;
};

/// Integer values indexed by classes. Reads of absent classes return 0 and
/// are recorded; in strict mode they throw std::out_of_range instead.
class NumberTable {
 public:
  explicit NumberTable(bool strict = false) : strict_(strict) {}

  void set(const ClassVector& c, BigInt value);
  BigInt get(const ClassVector& c) const;
  bool contains(const ClassVector& c) const;
  std::vector<ClassVector> support() const;
  std::size_t size() const { return values_.size(); }

  const std::vector<std::string>& missing_reads() const { return missing_; }
  void clear_missing_reads() const { missing_.clear(); }

 private:
  std::map<std::vector<std::int64_t>, BigInt> values_;
  bool strict_;
  mutable std::vector<std::string> missing_;
};

using LaurentTable = std::map<std::vector<std::int64_t>, LaurentPoly>;

/// binom(n, j), zero unless 0 <= j <= n.
BigInt binomial(std::int64_t n, std::int64_t j);

/// u_{m,k} = (-1)^k (binom(m+k, m) + binom(m+k-1, m)). Throws on negative input.
BigInt u_coeff(std::int64_t m, std::int64_t k);

/// T(d) + 2 sum_{k>=1} (-1)^k T(d - kS): the transfer of T across a surgery
/// along the sphere class S. Terms run up to the last k with d - kS in the
/// support. Throws std::invalid_argument unless S.S = -2.
BigInt lagrangian_transform(const NumberTable& t, const ClassLattice& lattice,
                            const ClassVector& s, const ClassVector& d);

/// sum over all k in Z of (-1)^k T(d - kS), over the support of T.
BigInt lagrangian_transform_alternating(const NumberTable& t, const ClassLattice& lattice,
                                        const ClassVector& s, const ClassVector& d);

/// Whether T(c) = T(c + (c.S) S) for every class of the support.
bool reflection_closed(const NumberTable& t, const ClassLattice& lattice, const ClassVector& s);

/// sum over k_1..k_n >= 0 of prod u_{d.E_i, k_i} * Gamma(d - sum k_i E_i).
/// Requires E_i.E_i = -2, E_i.E_j = 0 for i != j and d.E_i >= 0.
LaurentPoly gamma_transform(const LaurentTable& gamma, const ClassLattice& lattice,
                            const std::vector<ClassVector>& spheres, const ClassVector& d);

/// Right side of the two-ball formula:
/// T(d - lE1 - lE2) + 2 sum_{1<=j<=l} (-1)^j T(d - (l-j)E1 - (l+j)E2).
BigInt two_ball_transfer(const NumberTable& t, const ClassVector& d, const ClassVector& e1,
                         const ClassVector& e2, int l);

struct UInversionReport {
  std::int64_t m = 0;
  std::vector<BigInt> sums;  ///< sums[N] = sum_k u(m,k) binom(m+2N, N-k)
  bool pass = false;
};
UInversionReport check_u_inversion(std::int64_t m, std::int64_t n_max);

/// binom(2l-2b, l-2beta) + 2 sum_{k>=1} (-1)^k binom(2l-2b, l-k-2beta).
BigInt mainproof_coeff(std::int64_t l, std::int64_t b, std::int64_t beta);

struct MainProofReport {
  std::int64_t l = 0;
  std::int64_t b = 0;
  BigInt sum;       ///< sum_beta u_{l,b,beta} binom(b, beta)
  BigInt expected;  ///< 0 for l > b, (-2)^l for l = b
  bool pass = false;
};
MainProofReport check_mainproof_coeffs(std::int64_t l, std::int64_t b);

struct IncreaseViolation {
  ClassVector d;
  BigInt transformed;
  BigInt original;
};
struct IncreaseReport {
  std::vector<IncreaseViolation> violations;
  bool holds() const { return violations.empty(); }
};
/// Compares |lagrangian_transform(T, S, d)| with |T(d)| over the support.
IncreaseReport check_increase(const NumberTable& t, const ClassLattice& lattice,
                              const ClassVector& s);

/// Source of Sigma_2 values with pairs of points: (a, b, s) -> value.
using Sigma2Fixtures = std::function<std::optional<LaurentPoly>(int, int, int)>;

struct QuadricTerm {
  int k = 0;
  BigInt u;
  LaurentPoly value;  ///< G_QH of the rectangle (a+b+k) x (a-k)
};

struct QuadricReport {
  int a = 0;
  int b = 0;
  int genus = 0;
  std::optional<int> pairs;
  LaurentPoly lhs;
  LaurentPoly rhs;
  std::string lhs_source;  ///< "floor diagrams" or "appendix fixture"
  std::vector<QuadricTerm> terms;
  bool pass = false;
  std::string note;
};

/// G_{Sigma_2}(trapezoid_{a,b}, g[; s]) against sum_k u_{b,k} G_QH(rect_{a+b+k, a-k}).
/// The right side is assembled with gamma_transform on the quadric lattice.
/// With pairs, the left side comes from `fixtures` (s > 0) and the right
/// side from the engine's recursion.
QuadricReport check_conjecture_quadric(InvariantEngine& engine, int a, int b, int genus,
                                       std::optional<int> pairs,
                                       const Sigma2Fixtures& fixtures = {});

nlohmann::json to_json(const UInversionReport& r);
nlohmann::json to_json(const MainProofReport& r);
nlohmann::json to_json(const IncreaseReport& r);
nlohmann::json to_json(const QuadricReport& r);

}  // namespace refinv
