#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "qfib/rational.hpp"

namespace qfib {

enum class Backend { Exact, Float };

/// The two numeric backends every formula is instantiated for.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr Backend backend_of = std::same_as<T, Rational> ? Backend::Exact : Backend::Float;

template <Scalar T>
inline constexpr bool is_exact_v = backend_of<T> == Backend::Exact;

std::string_view backend_name(Backend b);

namespace tolerance {
// Relative agreement between window fits (Float backend).
inline constexpr double kFitAgreement = 1e-9;
// Relative size below which a window denominator counts as zero (Float backend).
inline constexpr double kDegenerate = 1e-12;
// Relative gap under which two deformation parameters are treated as equal.
inline constexpr double kCoincidence = 1e-12;
// QF residual bound, relative to the predicted energy (Float backend).
inline constexpr double kResidual = 1e-9;
}  // namespace tolerance

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& x) { return x.abs(); }
inline double abs_value(double x) { return std::fabs(x); }

/// Integer power, exact for Rational.
inline Rational ipow(const Rational& base, std::int64_t e) { return base.pow(e); }
inline double ipow(double base, std::int64_t e) { return std::pow(base, static_cast<double>(e)); }

/// Real power with a scalar exponent. Rational exponents must be integers.
Rational spow(const Rational& base, const Rational& exponent);
inline double spow(double base, double exponent) { return std::pow(base, exponent); }

/// Equality in the backend's sense: exact for Rational, relative `rel` for double.
inline bool same_value(const Rational& a, const Rational& b, double /*rel*/ = 0.0) { return a == b; }
inline bool same_value(double a, double b, double rel) {
  if (a == b) return true;
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

/// Parameter coincidence test used to route removable singularities to their limit form.
inline bool coincide(const Rational& a, const Rational& b) { return a == b; }
inline bool coincide(double a, double b) { return same_value(a, b, tolerance::kCoincidence); }

/// Relative deviation |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_gap(double a, double b);

std::string format_scalar(const Rational& x);
/// Shortest round-trip decimal.
std::string format_scalar(double x);

/// Lift an integer into either backend.
template <Scalar T>
T from_int(std::int64_t v) {
  if constexpr (is_exact_v<T>) {
    return Rational(v);
  } else {
    return static_cast<double>(v);
  }
}

}  // namespace qfib

namespace Eigen {

template <>
struct NumTraits<qfib::Rational> : GenericNumTraits<qfib::Rational> {
  using Real = qfib::Rational;
  using NonInteger = qfib::Rational;
  using Literal = qfib::Rational;
  using Nested = qfib::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
