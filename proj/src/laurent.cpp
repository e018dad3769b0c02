#include "refinv/laurent.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace refinv {

LaurentPoly LaurentPoly::constant(const BigInt& c) { return monomial_half(c, 0); }

LaurentPoly LaurentPoly::monomial(const BigInt& c, int exponent) {
  return monomial_half(c, 2 * exponent);
}

LaurentPoly LaurentPoly::monomial_half(const BigInt& c, int twice_exponent) {
  LaurentPoly p;
  p.add_term(twice_exponent, c);
  return p;
}

void LaurentPoly::add_term(int twice_exponent, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(twice_exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt LaurentPoly::coefficient(int exponent) const {
  return coefficient_half(2 * exponent);
}

BigInt LaurentPoly::coefficient_half(int twice_exponent) const {
  auto it = terms_.find(twice_exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool LaurentPoly::has_integer_exponents() const {
  for (const auto& [e, c] : terms_)
    if (e % 2 != 0) return false;
  return true;
}

bool LaurentPoly::is_palindromic() const {
  for (const auto& [e, c] : terms_)
    if (coefficient_half(-e) != c) return false;
  return true;
}

bool LaurentPoly::has_nonnegative_coefficients() const {
  for (const auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  LaurentPoly out;
  for (const auto& [e1, c1] : lhs.terms_)
    for (const auto& [e2, c2] : rhs.terms_) out.add_term(e1 + e2, c1 * c2);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const BigInt& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

namespace {

std::string exponent_string(int twice_exponent) {
  if (twice_exponent % 2 == 0) return std::to_string(twice_exponent / 2);
  return "{" + std::to_string(twice_exponent) + "/2}";
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag;
    os << "q";
    if (e != 2) os << "^" << exponent_string(e);
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
  return os << p.to_string();
}

LaurentPoly quantum_integer(int n) {
  if (n <= 0)
    throw std::invalid_argument("quantum_integer: n must be positive, got " +
                                std::to_string(n));
  LaurentPoly out;
  for (int e = n - 1; e >= -(n - 1); e -= 2) out += LaurentPoly::monomial_half(1, e);
  return out;
}

BigInt evaluate(const LaurentPoly& p, int q0) {
  if (q0 != 1 && q0 != -1)
    throw std::invalid_argument("evaluate: only q = 1 and q = -1 are supported");
  BigInt sum = 0;
  for (const auto& [e, c] : p.terms()) {
    if (q0 == 1) {
      sum += c;
      continue;
    }
    if (e % 2 != 0)
      throw std::domain_error("evaluate: half-integer exponent at q = -1");
    sum += ((e / 2) % 2 == 0) ? c : BigInt(-c);
  }
  return sum;
}

namespace {

class LaurentParser {
 public:
  explicit LaurentParser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  LaurentPoly parse() {
    if (s_.empty()) fail("empty input");
    LaurentPoly out;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      out += parse_term(sign);
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse_laurent: " + why + " at position " +
                                std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(get());
    return d;
  }

  LaurentPoly parse_term(int sign) {
    bool parens = false;
    if (peek() == '(') {
      get();
      parens = true;
    }
    std::string coeff_digits = digits();
    if (parens && get() != ')') fail("unbalanced parenthesis");
    if (peek() == '*') get();
    BigInt coeff = coeff_digits.empty() ? BigInt(1) : BigInt(coeff_digits);
    int twice_exp = 0;
    if (peek() == 'q') {
      get();
      twice_exp = 2;
      if (peek() == '^') {
        get();
        twice_exp = parse_exponent();
      }
    } else if (coeff_digits.empty()) {
      fail("expected a coefficient or q");
    }
    return LaurentPoly::monomial_half(sign * coeff, twice_exp);
  }

  // Returns the doubled exponent; accepts "3", "-3", "{-3}", "{1/2}", "-1/2".
  int parse_exponent() {
    bool braces = false;
    if (peek() == '{') {
      get();
      braces = true;
    }
    int sign = 1;
    if (peek() == '-' || peek() == '+') sign = get() == '-' ? -1 : 1;
    std::string num = digits();
    if (num.empty()) fail("missing exponent");
    int twice = 2 * std::stoi(num);
    if (peek() == '/') {
      get();
      if (digits() != "2") fail("only denominators of 2 are allowed");
      twice /= 2;
    }
    if (braces && get() != '}') fail("unbalanced brace");
    return sign * twice;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text) { return LaurentParser(text).parse(); }

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 != 0)
      throw std::domain_error("to_json: half-integer exponent in " + p.to_string());
    const std::string key = std::to_string(e / 2);
    if (c >= std::numeric_limits<std::int64_t>::min() &&
        c <= std::numeric_limits<std::int64_t>::max()) {
      j[key] = static_cast<std::int64_t>(c);
    } else {
      j[key] = c.str();
    }
  }
  return j;
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("laurent_from_json: expected an object");
  LaurentPoly out;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    int exponent = std::stoi(key, &used);
    if (used != key.size())
      throw std::invalid_argument("laurent_from_json: bad exponent \"" + key + "\"");
    BigInt c;
    if (value.is_number_unsigned()) {
      c = value.get<std::uint64_t>();
    } else if (value.is_number_integer()) {
      c = value.get<std::int64_t>();
    } else if (value.is_string()) {
      c = BigInt(value.get<std::string>());
    } else {
      throw std::invalid_argument("laurent_from_json: coefficient must be an integer");
    }
    out += LaurentPoly::monomial(c, exponent);
  }
  return out;
}

}  // namespace refinv
