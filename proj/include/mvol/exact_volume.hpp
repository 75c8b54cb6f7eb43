#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "mvol/errors.hpp"

namespace mvol {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

/// Pulls every square factor out of r (made square-free in place) and
/// returns the extracted square root s, so that r_in = s^2 * r_out.
inline Int extract_square_root(Int& r) {
  Int s = 1;
  for (Int d = 2; d * d <= r; ++d) {
    const Int dd = d * d;
    while (r % dd == 0) {
      r /= dd;
      s *= d;
    }
  }
  return s;
}

inline bool fits_int64(const Int& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace detail

/// Exact number of the form (num/den)·√radicand·π^pi_pow.
///
/// Values are kept canonical: gcd(|num|,den)=1, den ≥ 1, radicand
/// square-free and ≥ 1, and zero is (0,1,1,0). The set is closed under
/// multiplication and division; sums of incommensurable radicals are not
/// representable and addition is deliberately absent.
class ExactVolume {
public:
  /// Canonical zero.
  ExactVolume() = default;

  ExactVolume(long long n) : ExactVolume(Int(n), 1, 1, 0) {}
  ExactVolume(const Int& n) : ExactVolume(n, 1, 1, 0) {}
  ExactVolume(const Int& num, const Int& den) : ExactVolume(num, den, 1, 0) {}

  /// General normalizing constructor.
  ExactVolume(Int num, Int den, Int radicand, unsigned pi_pow) {
    if (den == 0) throw InvalidDenominatorError("ExactVolume: denominator is zero");
    if (radicand < 1) throw Error("ExactVolume: radicand must be >= 1");
    if (num == 0) return;  // canonical zero
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num *= detail::extract_square_root(radicand);
    const Int g = gcd(abs(num), den);
    num_ = num / g;
    den_ = den / g;
    radicand_ = radicand;
    pi_pow_ = pi_pow;
  }

  static ExactVolume sqrt_of(const Int& m) { return {1, 1, m, 0}; }
  static ExactVolume pi_power(unsigned k) { return {1, 1, 1, k}; }
  static ExactVolume from_rational(const Rational& r) {
    return {numerator(r), denominator(r)};
  }

  [[nodiscard]] const Int& num() const { return num_; }
  [[nodiscard]] const Int& den() const { return den_; }
  [[nodiscard]] const Int& radicand() const { return radicand_; }
  [[nodiscard]] unsigned pi_pow() const { return pi_pow_; }

  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] bool is_one() const {
    return num_ == 1 && den_ == 1 && radicand_ == 1 && pi_pow_ == 0;
  }
  [[nodiscard]] bool is_integer() const {
    return den_ == 1 && radicand_ == 1 && pi_pow_ == 0;
  }
  /// The value as a plain integer; throws if it is not one.
  [[nodiscard]] Int integer_value() const {
    if (!is_integer()) throw InconsistencyError("ExactVolume: value '" + str() + "' is not an integer");
    return num_;
  }

  /// Floating approximation, correct to machine relative precision.
  [[nodiscard]] double approx() const {
    using BF = boost::multiprecision::cpp_bin_float_50;
    if (is_zero()) return 0.0;
    BF v = BF(num_) / BF(den_);
    if (radicand_ != 1) v *= sqrt(BF(radicand_));
    if (pi_pow_ > 0) v *= pow(boost::math::constants::pi<BF>(), static_cast<int>(pi_pow_));
    return v.convert_to<double>();
  }

  /// Canonical text form, e.g. "(1/840)·π^4", "√3·π^5", "2", "0".
  [[nodiscard]] std::string str() const {
    if (is_zero()) return "0";
    std::vector<std::string> parts;
    const Int p = abs(num_);
    const bool unit_coeff = (p == 1 && den_ == 1);
    if (!unit_coeff || (radicand_ == 1 && pi_pow_ == 0)) {
      parts.push_back(den_ == 1 ? p.str() : "(" + p.str() + "/" + den_.str() + ")");
    }
    if (radicand_ != 1) parts.push_back("√" + radicand_.str());
    if (pi_pow_ == 1) parts.push_back("π");
    else if (pi_pow_ > 1) parts.push_back("π^" + std::to_string(pi_pow_));
    std::string out = num_ < 0 ? "-" : "";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) out += "·";
      out += parts[i];
    }
    return out;
  }

  /// Inverse of str() on canonical strings.
  static ExactVolume parse(std::string_view s);

  friend bool operator==(const ExactVolume&, const ExactVolume&) = default;

  friend ExactVolume operator*(const ExactVolume& a, const ExactVolume& b) {
    return {a.num_ * b.num_, a.den_ * b.den_, a.radicand_ * b.radicand_,
            a.pi_pow_ + b.pi_pow_};
  }

  friend ExactVolume operator/(const ExactVolume& a, const ExactVolume& b) {
    if (b.is_zero()) throw DivideByZeroError("ExactVolume: division by zero");
    if (a.is_zero()) return {};
    if (a.pi_pow_ < b.pi_pow_)
      throw Error("ExactVolume: quotient would have a negative π exponent");
    // √m/√n = √(mn)/n keeps the radicand integral.
    return {a.num_ * b.den_, a.den_ * b.num_ * b.radicand_,
            a.radicand_ * b.radicand_, a.pi_pow_ - b.pi_pow_};
  }

  ExactVolume& operator*=(const ExactVolume& b) { return *this = *this * b; }
  ExactVolume& operator/=(const ExactVolume& b) { return *this = *this / b; }

private:
  Int num_ = 0;
  Int den_ = 1;
  Int radicand_ = 1;
  unsigned pi_pow_ = 0;
};

/// Builds the canonical value from raw fields.
inline ExactVolume normalize(const Int& num, const Int& den, const Int& radicand,
                             unsigned pi_pow) {
  return {num, den, radicand, pi_pow};
}

inline ExactVolume ExactVolume::parse(std::string_view s) {
  const auto fail = [&]() -> void {
    throw Error("ExactVolume::parse: malformed value '" + std::string(s) + "'");
  };
  if (s == "0") return {};

  std::size_t i = 0;
  const auto consume = [&](std::size_t& j, std::string_view tok) {
    if (s.substr(j).starts_with(tok)) {
      j += tok.size();
      return true;
    }
    return false;
  };
  const auto digits = [&](std::size_t& j) -> Int {
    const std::size_t start = j;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j == start) fail();
    return Int(std::string(s.substr(start, j - start)));
  };

  bool neg = consume(i, "-");
  Int num = 1, den = 1, radicand = 1;
  unsigned pi_pow = 0;

  bool any = false;
  if (i < s.size() && s[i] == '(') {
    ++i;
    num = digits(i);
    if (!consume(i, "/")) fail();
    den = digits(i);
    if (!consume(i, ")")) fail();
    any = true;
  } else if (i < s.size() && s[i] >= '0' && s[i] <= '9') {
    num = digits(i);
    any = true;
  }

  // Optional parts are separated by '·' except at the front.
  const auto try_part = [&](std::string_view tok) {
    std::size_t j = i;
    if (any && !consume(j, "·")) return false;
    if (!consume(j, tok)) return false;
    i = j;
    any = true;
    return true;
  };
  if (try_part("√")) radicand = digits(i);
  if (try_part("π")) {
    pi_pow = 1;
    if (consume(i, "^")) pi_pow = digits(i).convert_to<unsigned>();
  }
  if (!any || i != s.size()) fail();
  return {neg ? -num : num, den, radicand, pi_pow};
}

/// JSON form {"num","den","radicand","pi_pow","approx"}; integer fields
/// wider than 64 bits are emitted as decimal strings.
inline void to_json(nlohmann::json& j, const ExactVolume& v) {
  const auto big = [](const Int& x) -> nlohmann::json {
    if (detail::fits_int64(x)) return x.convert_to<std::int64_t>();
    return x.str();
  };
  j = nlohmann::json{{"num", big(v.num())},
                     {"den", big(v.den())},
                     {"radicand", big(v.radicand())},
                     {"pi_pow", v.pi_pow()},
                     {"approx", v.approx()}};
}

inline void from_json(const nlohmann::json& j, ExactVolume& v) {
  const auto big = [](const nlohmann::json& x) -> Int {
    if (x.is_string()) return Int(x.get<std::string>());
    return Int(x.get<std::int64_t>());
  };
  v = ExactVolume(big(j.at("num")), big(j.at("den")), big(j.at("radicand")),
                  j.at("pi_pow").get<unsigned>());
}

}  // namespace mvol
