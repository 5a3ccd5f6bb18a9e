#pragma once

#include <cstdint>

#include "qfib/scalar.hpp"

/// Closed-form expressions for the μ-oscillator quasi-Fibonacci coefficients, transcribed
/// as printed in the literature. They serve as references: the solvers in quasifib.hpp
/// derive the same quantities from the general two-equation split, and audits compare
/// both routes. Where the two disagree the derived value is the correct one.
///
/// Every function throws std::domain_error when one of its denominators vanishes.
namespace qfib::closed_form {

/// Splitting ansatz.
template <Scalar T>
T splitting_lambda(const T& mu, std::int64_t n);
template <Scalar T>
T splitting_rho(const T& mu, std::int64_t n);

/// Substitution ansatz with λ₀ = E₁/E₀.
template <Scalar T>
T substitution_lambda(const T& mu, std::int64_t n);
template <Scalar T>
T substitution_rho(const T& mu, std::int64_t n);

/// Gauge that turns the general solution into the splitting one.
template <Scalar T>
T k_splitting(const T& mu, std::int64_t n);
/// Gauge that turns the general solution into the substitution one (as printed;
/// does not reproduce it, see the gauge audit).
template <Scalar T>
T k_substitution(const T& mu, std::int64_t n);

/// ρ = -1 gauge and the λₙ that goes with it (as printed).
template <Scalar T>
T k_rho_minus_one(const T& mu, std::int64_t n);
template <Scalar T>
T lambda_rho_minus_one(const T& mu, std::int64_t n);

/// λ = 2 gauge and the ρₙ that goes with it (as printed).
template <Scalar T>
T k_lambda_two(const T& mu, std::int64_t n);
template <Scalar T>
T rho_lambda_two(const T& mu, std::int64_t n);

/// Gauge giving cubic/cubic coefficients, and the printed coefficients.
template <Scalar T>
T k_cubic(const T& mu, std::int64_t n);
template <Scalar T>
T cubic_lambda(const T& mu, std::int64_t n);
template <Scalar T>
T cubic_rho(const T& mu, std::int64_t n);

/// Rows n = 0..5 of the tabulated coefficients at K = 1.
template <Scalar T>
struct TableRow {
  T lambda;
  T rho;
  T energy;
};
template <Scalar T>
TableRow<T> table_row(const T& mu, std::int64_t n);

/// Harmonic oscillator (μ = 0) in an arbitrary constant gauge K.
template <Scalar T>
T harmonic_lambda(const T& k);
template <Scalar T>
T harmonic_rho(const T& k, std::int64_t n);

}  // namespace qfib::closed_form
