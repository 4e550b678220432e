#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xfam {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational kept in canonical form: gcd(|num|, den) = 1,
// den > 0, and zero is 0/1.  Every bound comparison in this library goes
// through this type, so equality and ordering are exact by construction.
class Rational {
public:
  Rational() : value_(0) {}
  Rational(long long n) : value_(n) {}
  Rational(const BigInt& n) : value_(n) {}

  Rational(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    value_.assign(boost::multiprecision::cpp_rational(num, den));
  }

  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  // Accepts "a/b" or "a" with optional leading minus; rejects anything else.
  static Rational parse(std::string_view text) {
    auto bad = [&] {
      return std::invalid_argument("rational: cannot parse \"" + std::string(text) + "\"");
    };
    auto parse_int = [&](std::string_view part) {
      if (part.empty()) throw bad();
      std::size_t i = part[0] == '-' ? 1 : 0;
      if (i == part.size()) throw bad();
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') throw bad();
      return BigInt(std::string(part));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    std::string_view den_part = text.substr(slash + 1);
    if (!den_part.empty() && den_part[0] == '-') throw bad();
    BigInt den = parse_int(den_part);
    if (den == 0) throw std::domain_error("rational: zero denominator");
    return Rational(num, den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return denominator() == 1; }

  // "a/b", or just "a" when the denominator is 1.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integer()) s += "/" + denominator().str();
    return s;
  }

  Rational operator-() const { return Rational(cpp_rational(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }

  Rational& operator/=(const Rational& o) {
    if (o.value_ == 0) throw std::domain_error("rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  Rational pow(unsigned e) const {
    using boost::multiprecision::pow;
    BigInt num = pow(numerator(), e);
    BigInt den = pow(denominator(), e);
    return Rational(cpp_rational(num, den));
  }

private:
  using cpp_rational = boost::multiprecision::cpp_rational;

  explicit Rational(cpp_rational v) : value_(std::move(v)) {}

  cpp_rational value_;
};

}  // namespace xfam
