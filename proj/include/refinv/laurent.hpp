#pragma once

// Exact Laurent polynomials in q with half-integer exponents and
// arbitrary-precision integer coefficients.

#include <map>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace refinv {

using BigInt = boost::multiprecision::cpp_int;

/// Element of Z[q^{1/2}, q^{-1/2}].
///
/// Exponents are stored doubled (key 2e for q^e) so half-integer powers stay
/// exact. Zero coefficients are never stored, so two polynomials are equal
/// iff their term maps are equal.
class LaurentPoly {
 public:
  using TermMap = std::map<int, BigInt>;

  LaurentPoly() = default;

  static LaurentPoly constant(const BigInt& c);
  /// c * q^e for an integer exponent e.
  static LaurentPoly monomial(const BigInt& c, int exponent);
  /// c * q^{twice_exponent/2}.
  static LaurentPoly monomial_half(const BigInt& c, int twice_exponent);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of q^exponent (integer exponent).
  BigInt coefficient(int exponent) const;
  BigInt coefficient_half(int twice_exponent) const;

  /// Largest / smallest doubled exponent. Undefined on zero.
  int max_twice_exponent() const { return terms_.rbegin()->first; }
  int min_twice_exponent() const { return terms_.begin()->first; }

  bool has_integer_exponents() const;
  bool is_palindromic() const;
  bool has_nonnegative_coefficients() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const BigInt& scalar);

  friend LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) {
    return lhs += rhs;
  }
  friend LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) {
    return lhs -= rhs;
  }
  friend LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
  friend LaurentPoly operator*(LaurentPoly lhs, const BigInt& scalar) {
    return lhs *= scalar;
  }
  friend LaurentPoly operator*(const BigInt& scalar, LaurentPoly rhs) {
    return rhs *= scalar;
  }
  LaurentPoly operator-() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Human-readable form, e.g. "q^-1 + 10 + q".
  std::string to_string() const;

 private:
  void add_term(int twice_exponent, const BigInt& c);

  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// Symmetric quantum integer [n]_q = q^{(n-1)/2} + q^{(n-3)/2} + ... + q^{-(n-1)/2}.
/// Throws std::invalid_argument for n <= 0.
LaurentPoly quantum_integer(int n);

/// Exact value at q = 1 or q = -1. Evaluation at -1 requires integer
/// exponents (throws std::domain_error otherwise); any other q0 throws
/// std::invalid_argument.
BigInt evaluate(const LaurentPoly& p, int q0);

/// Parses the textual form produced by to_string() and the looser
/// hand-written form used in fixture files: "q^-3 + 14q^-2 + 95 q^-1 + 420",
/// "2q^{1/2}", "-q", "0". Throws std::invalid_argument on malformed input.
LaurentPoly parse_laurent(std::string_view text);

/// JSON object {"<exponent>": coefficient}. Coefficients that do not fit in
/// a signed 64-bit integer are written as decimal strings. Throws
/// std::domain_error for half-integer exponents.
nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j);

}  // namespace refinv
