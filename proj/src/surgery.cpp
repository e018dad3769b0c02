#include "refinv/surgery.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace refinv {

ClassVector make_class(std::initializer_list<std::int64_t> coords) {
  ClassVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (auto c : coords) v(i++) = c;
  return v;
}

std::vector<std::int64_t> class_key(const ClassVector& c) {
  return std::vector<std::int64_t>(c.data(), c.data() + c.size());
}

std::string to_string(const ClassVector& c) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < c.size(); ++i) os << (i ? "," : "") << c(i);
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

ClassLattice::ClassLattice(IntersectionForm form, ClassVector c1)
    : form_(std::move(form)), c1_(std::move(c1)) {
  if (form_.rows() != form_.cols()) throw std::invalid_argument("intersection form not square");
  if (form_ != form_.transpose()) throw std::invalid_argument("intersection form not symmetric");
  check_rank(c1_);
}

ClassLattice ClassLattice::quadric() {
  IntersectionForm q(2, 2);
  q << 0, 1, 1, 0;
  return ClassLattice(q, make_class({2, 2}));
}

ClassLattice ClassLattice::blown_up_plane(int points) {
  if (points < 0) throw std::invalid_argument("negative number of points");
  const Eigen::Index n = points + 1;
  IntersectionForm q = IntersectionForm::Zero(n, n);
  ClassVector c1(n);
  q(0, 0) = 1;
  c1(0) = 3;
  for (Eigen::Index i = 1; i < n; ++i) {
    q(i, i) = -1;
    c1(i) = -1;
  }
  return ClassLattice(q, c1);
}

void ClassLattice::check_rank(const ClassVector& c) const {
  if (c.size() != form_.rows())
    throw std::invalid_argument("class " + to_string(c) + " has rank " + std::to_string(c.size()) +
                                ", lattice has rank " + std::to_string(form_.rows()));
}

std::int64_t ClassLattice::dot(const ClassVector& a, const ClassVector& b) const {
  check_rank(a);
  check_rank(b);
  return a.dot(form_ * b);
}

void ClassLattice::name(const std::string& label, ClassVector c) {
  check_rank(c);
  names_[label] = std::move(c);
}

const ClassVector& ClassLattice::named(const std::string& label) const {
  auto it = names_.find(label);
  if (it == names_.end()) throw std::out_of_range("no class named " + label);
  return it->second;
}

bool ClassLattice::is_lagrangian_sphere(const ClassVector& s) const {
  return dot(s, s) == -2 && c1_dot(s) == 0;
}

bool ClassLattice::is_exceptional(const ClassVector& e) const { return dot(e, e) == -1; }

// ---------------------------------------------------------------------------

void NumberTable::set(const ClassVector& c, BigInt value) { values_[class_key(c)] = std::move(value); }

BigInt NumberTable::get(const ClassVector& c) const {
  auto it = values_.find(class_key(c));
  if (it != values_.end()) return it->second;
  if (strict_) throw std::out_of_range("number table has no entry for " + to_string(c));
  missing_.push_back(to_string(c));
  return 0;
}

bool NumberTable::contains(const ClassVector& c) const { return values_.count(class_key(c)) > 0; }

std::vector<ClassVector> NumberTable::support() const {
  std::vector<ClassVector> out;
  for (const auto& [k, v] : values_) {
    ClassVector c(static_cast<Eigen::Index>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) c(static_cast<Eigen::Index>(i)) = k[i];
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

BigInt binomial(std::int64_t n, std::int64_t j) {
  if (n < 0 || j < 0 || j > n) return 0;
  j = std::min(j, n - j);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= j; ++i) r = r * (n - j + i) / i;
  return r;
}

BigInt u_coeff(std::int64_t m, std::int64_t k) {
  if (m < 0 || k < 0)
    throw std::invalid_argument("u_coeff: negative argument (" + std::to_string(m) + ", " +
                                std::to_string(k) + ")");
  BigInt v = binomial(m + k, m) + binomial(m + k - 1, m);
  return k % 2 == 0 ? v : BigInt(-v);
}

namespace {

// k with diff = k * s, if any.
std::optional<std::int64_t> multiple_of(const ClassVector& diff, const ClassVector& s) {
  std::optional<std::int64_t> k;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) == 0) {
      if (diff(i) != 0) return std::nullopt;
      continue;
    }
    if (diff(i) % s(i) != 0) return std::nullopt;
    const std::int64_t ki = diff(i) / s(i);
    if (k && *k != ki) return std::nullopt;
    k = ki;
  }
  return k;
}

void require_sphere(const ClassLattice& lattice, const ClassVector& s) {
  if (lattice.dot(s, s) != -2)
    throw std::invalid_argument("sphere class " + to_string(s) + " has square " +
                                std::to_string(lattice.dot(s, s)) + ", expected -2");
}

// Range of k with d - kS in the support of t.
std::optional<std::pair<std::int64_t, std::int64_t>> support_range(const NumberTable& t,
                                                                   const ClassVector& s,
                                                                   const ClassVector& d) {
  std::optional<std::pair<std::int64_t, std::int64_t>> range;
  for (const auto& c : t.support()) {
    if (c.size() != d.size()) continue;
    auto k = multiple_of(d - c, s);
    if (!k) continue;
    if (!range) range = std::make_pair(*k, *k);
    range->first = std::min(range->first, *k);
    range->second = std::max(range->second, *k);
  }
  return range;
}

}  // namespace

BigInt lagrangian_transform(const NumberTable& t, const ClassLattice& lattice,
                            const ClassVector& s, const ClassVector& d) {
  require_sphere(lattice, s);
  BigInt total = t.get(d);
  const auto range = support_range(t, s, d);
  const std::int64_t last = range ? range->second : 0;
  for (std::int64_t k = 1; k <= last; ++k) {
    const BigInt v = t.get(d - k * s);
    total += k % 2 == 0 ? BigInt(2 * v) : BigInt(-2 * v);
  }
  return total;
}

BigInt lagrangian_transform_alternating(const NumberTable& t, const ClassLattice& lattice,
                                        const ClassVector& s, const ClassVector& d) {
  require_sphere(lattice, s);
  const auto range = support_range(t, s, d);
  if (!range) return 0;
  BigInt total = 0;
  for (std::int64_t k = range->first; k <= range->second; ++k) {
    const BigInt v = t.get(d - k * s);
    total += (k % 2 == 0) ? v : BigInt(-v);
  }
  return total;
}

bool reflection_closed(const NumberTable& t, const ClassLattice& lattice, const ClassVector& s) {
  for (const auto& c : t.support()) {
    const ClassVector image = c + lattice.dot(c, s) * s;
    if (!t.contains(image) || t.get(image) != t.get(c)) return false;
  }
  return true;
}

LaurentPoly gamma_transform(const LaurentTable& gamma, const ClassLattice& lattice,
                            const std::vector<ClassVector>& spheres, const ClassVector& d) {
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    require_sphere(lattice, spheres[i]);
    for (std::size_t j = i + 1; j < spheres.size(); ++j)
      if (lattice.dot(spheres[i], spheres[j]) != 0)
        throw std::invalid_argument("sphere classes " + to_string(spheres[i]) + " and " +
                                    to_string(spheres[j]) + " are not disjoint");
  }
  std::vector<std::int64_t> degrees;
  for (const auto& e : spheres) {
    degrees.push_back(lattice.dot(d, e));
    if (degrees.back() < 0)
      throw std::invalid_argument("d.E = " + std::to_string(degrees.back()) + " < 0 for E = " +
                                  to_string(e));
  }
  LaurentPoly total;
  for (const auto& [key, value] : gamma) {
    ClassVector c(static_cast<Eigen::Index>(key.size()));
    for (std::size_t i = 0; i < key.size(); ++i) c(static_cast<Eigen::Index>(i)) = key[i];
    if (c.size() != d.size()) continue;
    const ClassVector diff = d - c;
    // The spheres are orthogonal of square -2, so k_i = -(diff.E_i)/2.
    ClassVector rebuilt = ClassVector::Zero(d.size());
    BigInt weight = 1;
    bool ok = true;
    for (std::size_t i = 0; i < spheres.size() && ok; ++i) {
      const std::int64_t p = lattice.dot(diff, spheres[i]);
      if (p % 2 != 0 || -p / 2 < 0) {
        ok = false;
        break;
      }
      const std::int64_t k = -p / 2;
      rebuilt += k * spheres[i];
      weight *= u_coeff(degrees[i], k);
    }
    if (!ok || rebuilt != diff) continue;
    total += value * weight;
  }
  return total;
}

BigInt two_ball_transfer(const NumberTable& t, const ClassVector& d, const ClassVector& e1,
                         const ClassVector& e2, int l) {
  BigInt total = t.get(d - l * e1 - l * e2);
  for (int j = 1; j <= l; ++j) {
    const BigInt v = t.get(d - (l - j) * e1 - (l + j) * e2);
    total += j % 2 == 0 ? BigInt(2 * v) : BigInt(-2 * v);
  }
  return total;
}

// ---------------------------------------------------------------------------

UInversionReport check_u_inversion(std::int64_t m, std::int64_t n_max) {
  UInversionReport r;
  r.m = m;
  r.pass = true;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    BigInt sum = 0;
    for (std::int64_t k = 0; k <= n; ++k) sum += u_coeff(m, k) * binomial(m + 2 * n, n - k);
    r.pass = r.pass && sum == (n == 0 ? 1 : 0);
    r.sums.push_back(sum);
  }
  return r;
}

BigInt mainproof_coeff(std::int64_t l, std::int64_t b, std::int64_t beta) {
  const std::int64_t n = 2 * l - 2 * b;
  BigInt v = binomial(n, l - 2 * beta);
  for (std::int64_t k = 1; l - k - 2 * beta >= 0; ++k) {
    const BigInt c = binomial(n, l - k - 2 * beta);
    v += k % 2 == 0 ? BigInt(2 * c) : BigInt(-2 * c);
  }
  return v;
}

MainProofReport check_mainproof_coeffs(std::int64_t l, std::int64_t b) {
  MainProofReport r;
  r.l = l;
  r.b = b;
  for (std::int64_t beta = 0; beta <= b; ++beta) r.sum += mainproof_coeff(l, b, beta) * binomial(b, beta);
  if (l == b) {
    r.expected = 1;
    for (std::int64_t i = 0; i < l; ++i) r.expected *= -2;
  }
  r.pass = l >= b && r.sum == r.expected;
  return r;
}

IncreaseReport check_increase(const NumberTable& t, const ClassLattice& lattice,
                              const ClassVector& s) {
  require_sphere(lattice, s);
  IncreaseReport r;
  for (const auto& d : t.support()) {
    const BigInt original = t.get(d);
    const BigInt transformed = lagrangian_transform(t, lattice, s, d);
    if (abs(transformed) < abs(original)) r.violations.push_back({d, transformed, original});
  }
  return r;
}

// ---------------------------------------------------------------------------

QuadricReport check_conjecture_quadric(InvariantEngine& engine, int a, int b, int genus,
                                       std::optional<int> pairs, const Sigma2Fixtures& fixtures) {
  QuadricReport r;
  r.a = a;
  r.b = b;
  r.genus = genus;
  r.pairs = pairs;
  const int s = pairs.value_or(0);
  try {
    const HPolygon trapezoid = make_sigma2(a, b);
    if (s == 0) {
      r.lhs = engine.invariant(trapezoid, genus);
      r.lhs_source = "floor diagrams";
    } else {
      auto fixed = fixtures ? fixtures(a, b, s) : std::nullopt;
      if (!fixed) {
        r.note = "no fixture for the left side";
        return r;
      }
      r.lhs = *fixed;
      r.lhs_source = "appendix fixture";
    }

    // Right side over the quadric: E = (-1, 1) has square -2, and the class
    // d = (a+b, a) has d.E = b, so d - kE is the rectangle (a+b+k) x (a-k).
    const ClassLattice lattice = ClassLattice::quadric();
    const ClassVector e = make_class({-1, 1});
    const ClassVector d = make_class({a + b, a});
    LaurentTable table;
    for (int k = 0; k <= a; ++k) {
      QuadricTerm term;
      term.k = k;
      term.u = u_coeff(b, k);
      if (a - k > 0) {
        const HPolygon rect = make_rectangle(a + b + k, a - k);
        term.value = s == 0 ? engine.invariant(rect, genus) : engine.descendant(rect, s).value;
      }
      table[{a + b + k, a - k}] = term.value;
      r.terms.push_back(term);
    }
    r.rhs = gamma_transform(table, lattice, {e}, d);
    r.pass = r.lhs == r.rhs;
  } catch (const std::exception& ex) {
    r.note = ex.what();
    r.pass = false;
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json bigint_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

}  // namespace

nlohmann::json to_json(const UInversionReport& r) {
  nlohmann::json sums = nlohmann::json::array();
  for (const auto& v : r.sums) sums.push_back(bigint_json(v));
  return {{"m", r.m}, {"sums", sums}, {"pass", r.pass}};
}

nlohmann::json to_json(const MainProofReport& r) {
  return {{"l", r.l},
          {"b", r.b},
          {"sum", bigint_json(r.sum)},
          {"expected", bigint_json(r.expected)},
          {"pass", r.pass}};
}

nlohmann::json to_json(const IncreaseReport& r) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : r.violations)
    v.push_back({{"class", class_key(x.d)},
                 {"transformed", bigint_json(x.transformed)},
                 {"original", bigint_json(x.original)}});
  return {{"holds", r.holds()}, {"violations", v}};
}

nlohmann::json to_json(const QuadricReport& r) {
  nlohmann::json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["genus"] = r.genus;
  j["pairs"] = r.pairs ? nlohmann::json(*r.pairs) : nlohmann::json(nullptr);
  j["lhs"] = to_json(r.lhs);
  j["rhs"] = to_json(r.rhs);
  j["lhs_source"] = r.lhs_source;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : r.terms)
    j["terms"].push_back({{"k", t.k}, {"u", bigint_json(t.u)}, {"value", to_json(t.value)}});
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace refinv
