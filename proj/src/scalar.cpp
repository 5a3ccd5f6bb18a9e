#include "qfib/scalar.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace qfib {

std::string_view backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

Rational spow(const Rational& base, const Rational& exponent) {
  if (!exponent.is_integer()) {
    throw std::domain_error("non-integer exponent " + exponent.to_string() + " in exact arithmetic");
  }
  const BigInt e = exponent.numerator();
  if (e > 1'000'000 || e < -1'000'000) throw std::domain_error("exponent out of range: " + e.str());
  return base.pow(e.convert_to<std::int64_t>());
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return 0.0;
  return std::fabs(a - b) / scale;
}

std::string format_scalar(const Rational& x) { return x.to_string(); }

std::string format_scalar(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace qfib
