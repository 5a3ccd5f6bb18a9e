#include "qfib/closed_forms.hpp"

#include <stdexcept>
#include <string>

namespace qfib::closed_form {

namespace {

template <Scalar T>
T div(const T& num, const T& den) {
  if (is_zero(den)) throw std::domain_error("closed form: vanishing denominator");
  return num / den;
}

template <Scalar T>
T sign_power(std::int64_t e) {
  return from_int<T>(e % 2 == 0 ? 1 : -1);
}

}  // namespace

template <Scalar T>
T splitting_lambda(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T m = from_int<T>(n);
  return from_int<T>(2) * div<T>(one + mu * (one + from_int<T>(2) * m), one + from_int<T>(2) * mu * m) *
         div<T>(one + mu * m, one + mu * (m + from_int<T>(2)));
}

template <Scalar T>
T splitting_rho(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T m = from_int<T>(n);
  return -div<T>(one + from_int<T>(2) * mu * (m + one), one + from_int<T>(2) * mu * m) *
         div<T>((one + mu * m) * (one + mu * (m - one)),
                (one + mu * (m + from_int<T>(2))) * (one + mu * (m + one)));
}

template <Scalar T>
T substitution_lambda(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T m = from_int<T>(n);
  const T brace = div<T>(sign_power<T>(n), one + mu) + div<T>(m + from_int<T>(2), one + mu * (m + from_int<T>(2)));
  return brace * div<T>((one + mu * m) * (one + mu * (m + one)), m * (one + mu * (m + one)) + (m + one) * (one + mu * m));
}

template <Scalar T>
T substitution_rho(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T m = from_int<T>(n);
  const T brace = div<T>(sign_power<T>(n - 1), one + mu) + div<T>(m + one, one + mu * (m + one));
  return brace *
         div<T>((one + mu * (m - one)) * (one + mu * m), (m - one) * (one + mu * m) + m * (one + mu * (m - one)));
}

template <Scalar T>
T k_splitting(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  return div<T>(one + from_int<T>(3) * mu * m * (one + two * mu) + two * mu * (mu * m * m + one),
                (one + two * mu * m) * (one + mu * (m + two)));
}

template <Scalar T>
T k_substitution(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  const T pair_sum = m * (one + mu * (m + one)) + (m + one) * (one + mu * m);
  return div<T>(mu, one + mu * (m + two)) +
         div<T>(sign_power<T>(n + 1) * (one + mu * m) * (one + mu * (m + one)), (one + mu) * pair_sum) +
         div<T>((m + one) * (from_int<T>(3) * mu * m + (from_int<T>(5) * m + one) * (one + mu * m)),
                (one + mu * (m + two)) * pair_sum);
}

template <Scalar T>
T k_rho_minus_one(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  const T brace = two * mu * mu * m * m * (from_int<T>(3) * m + one) + from_int<T>(4) * mu * m * (from_int<T>(3) * m + two * mu) +
                  mu * (m - two) + from_int<T>(6) * m - one;
  return div<T>((one + mu * (m + one)) * brace,
                (one + mu * (m - one)) * (one + mu * (m + two)) * (two * (m + one) * (one + mu * m) - one));
}

template <Scalar T>
T lambda_rho_minus_one(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  const T brace = from_int<T>(10) * mu * m * m * (two + mu * m) + (one - from_int<T>(4) * mu) * (from_int<T>(3) * mu * m + one) +
                  from_int<T>(12) * m;
  return one - div<T>((one + mu * (m + one)) * brace,
                      (one + mu * (m - one)) * (one + mu * (m + two)) * (two * (m + one) * (one + mu * m) - one));
}

template <Scalar T>
T k_lambda_two(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  return two * div<T>(one + mu * (m + one), one + mu * (m + two)) - one;
}

template <Scalar T>
T rho_lambda_two(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  const T numerator = m * (two + from_int<T>(5) * mu) + from_int<T>(4) * mu * m * (m + mu) +
                      two * mu * mu * m * m * (m + from_int<T>(3)) - one;
  return -div<T>(one + mu * (m - one), one + two * (m + one) * (one + mu * m)) *
         div<T>(numerator, (one + mu * (m + one)) * (one + mu * (m + two)));
}

template <Scalar T>
T k_cubic(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  return div<T>((one + mu * (m + one)) * (one + two * (m - one) * (one + mu * m)),
                (one + mu * (m + two)) * (-one + two * (m + one) * (one + mu * m)));
}

template <Scalar T>
T cubic_lambda(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  return one + div<T>(one + mu * (m + one), one + mu * (m + two)) *
                   div<T>(from_int<T>(3) + two * (one + mu * m) * (from_int<T>(3) * m + one),
                          one - two * (m + one) * (one + mu * m));
}

template <Scalar T>
T cubic_rho(const T& mu, std::int64_t n) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  return -div<T>(one + mu * (m - one), one + two * (m - one) * (one + mu * m)) *
         div<T>(one + two * m * (one + mu * (m + from_int<T>(3))), one + mu * (m + two));
}

template <Scalar T>
TableRow<T> table_row(const T& mu, std::int64_t n) {
  const auto c = [](std::int64_t v) { return from_int<T>(v); };
  const auto lin = [&](std::int64_t a, std::int64_t b) { return c(a) + c(b) * mu; };  // a + bμ
  switch (n) {
    case 0:
      return {div<T>(lin(2, 2), lin(1, 2)), div<T>(mu - c(1), lin(1, 1)), div<T>(c(1), c(2) * lin(1, 1))};
    case 1:
      return {div<T>(lin(2, 4), lin(1, 3)), div<T>(lin(3, 4), lin(1, 2)) - div<T>(c(4) * lin(1, 2), lin(1, 3)),
              div<T>(c(1), c(2) * lin(1, 1)) + div<T>(c(1), lin(1, 2))};
    case 2:
      return {div<T>(lin(2, 6), lin(1, 4)),
              div<T>(lin(1, 1), lin(3, 4)) * (div<T>(lin(5, 12), lin(1, 3)) - div<T>(c(8) * lin(1, 3), lin(1, 4))),
              div<T>(c(1), lin(1, 2)) + div<T>(c(3), c(2) * lin(1, 3))};
    case 3:
      return {div<T>(lin(2, 8), lin(1, 5)),
              div<T>(lin(1, 2), lin(5, 12)) * (div<T>(lin(7, 24), lin(1, 4)) - div<T>(c(12) * lin(1, 4), lin(1, 5))),
              div<T>(c(3), c(2) * lin(1, 3)) + div<T>(c(2), lin(1, 4))};
    case 4:
      return {div<T>(lin(2, 10), lin(1, 6)),
              div<T>(lin(1, 3), lin(7, 24)) * (div<T>(lin(9, 40), lin(1, 5)) - div<T>(c(16) * lin(1, 5), lin(1, 6))),
              div<T>(c(2), lin(1, 4)) + div<T>(c(5), c(2) * lin(1, 5))};
    case 5:
      return {div<T>(lin(2, 12), lin(1, 7)),
              div<T>(lin(1, 4), lin(9, 40)) * (div<T>(lin(11, 60), lin(1, 6)) - div<T>(c(20) * lin(1, 6), lin(1, 7))),
              div<T>(c(5), c(2) * lin(1, 5)) + div<T>(c(3), lin(1, 6))};
    default:
      throw std::out_of_range("table rows cover n = 0..5, got " + std::to_string(n));
  }
}

template <Scalar T>
T harmonic_lambda(const T& k) {
  return from_int<T>(3) - k;
}

template <Scalar T>
T harmonic_rho(const T& k, std::int64_t n) {
  const T m = from_int<T>(n);
  return div<T>(k * (from_int<T>(2) * m + from_int<T>(1)) - from_int<T>(4) * m, from_int<T>(2) * m - from_int<T>(1));
}

#define QFIB_INSTANTIATE_CLOSED_FORMS(T)                  \
  template T splitting_lambda(const T&, std::int64_t);    \
  template T splitting_rho(const T&, std::int64_t);       \
  template T substitution_lambda(const T&, std::int64_t); \
  template T substitution_rho(const T&, std::int64_t);    \
  template T k_splitting(const T&, std::int64_t);         \
  template T k_substitution(const T&, std::int64_t);      \
  template T k_rho_minus_one(const T&, std::int64_t);     \
  template T lambda_rho_minus_one(const T&, std::int64_t);\
  template T k_lambda_two(const T&, std::int64_t);        \
  template T rho_lambda_two(const T&, std::int64_t);      \
  template T k_cubic(const T&, std::int64_t);             \
  template T cubic_lambda(const T&, std::int64_t);        \
  template T cubic_rho(const T&, std::int64_t);           \
  template TableRow<T> table_row(const T&, std::int64_t); \
  template T harmonic_lambda(const T&);                   \
  template T harmonic_rho(const T&, std::int64_t);

QFIB_INSTANTIATE_CLOSED_FORMS(Rational)
QFIB_INSTANTIATE_CLOSED_FORMS(double)

#undef QFIB_INSTANTIATE_CLOSED_FORMS

}  // namespace qfib::closed_form
