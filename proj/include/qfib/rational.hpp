#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qfib {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Construction from floating-point types is deleted, so an expression that
/// mixes Rational and double does not compile.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(const BigInt& integer) : value_(integer) {}
  Rational(const BigInt& num, const BigInt& den);

  Rational(double) = delete;
  Rational(float) = delete;
  Rational(long double) = delete;

  /// Parses "a", "-a" or "a/b". Throws std::invalid_argument on anything else,
  /// including decimal points and a zero denominator.
  static Rational parse(std::string_view text);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_zero() const;
  bool is_integer() const;
  int sign() const;

  Rational abs() const;
  Rational reciprocal() const;

  /// Integer power; negative exponents require a nonzero base.
  Rational pow(std::int64_t exponent) const;

  double to_double() const;

  /// "n" for integers, "n/d" otherwise.
  std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;
  Rational operator+() const { return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  using Impl = boost::multiprecision::cpp_rational;
  explicit Rational(Impl value) : value_(std::move(value)) {}

  Impl value_{0};
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace qfib

template <>
struct std::hash<qfib::Rational> {
  std::size_t operator()(const qfib::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
