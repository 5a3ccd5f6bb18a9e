#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "qfib/models.hpp"

namespace qfib {

/// Choices of the free function K(n; …) that splits the quasi-Fibonacci relation
/// E_{n+1} = λₙEₙ + ρₙE_{n-1} into two solvable equations.
enum class GaugeKind {
  Const,      // K = c
  K1,         // reproduces the splitting ansatz
  K2,         // reproduces the substitution ansatz (λ₀ = E₁/E₀)
  RhoNegOne,  // forces ρₙ = -1
  LambdaTwo,  // forces λₙ = 2
  Cubic,      // cubic/cubic coefficients
  Custom,     // tabulated n → K
};

/// Flag spelling: const, k1, k2, rho-neg-one, lambda-two, cubic, custom.
std::string_view gauge_name(GaugeKind kind);
std::optional<GaugeKind> parse_gauge_name(std::string_view name);

template <Scalar T>
struct KGauge {
  GaugeKind kind = GaugeKind::Const;
  T constant = from_int<T>(1);
  std::map<std::int64_t, T> table;

  static KGauge constant_gauge(T c) { return {GaugeKind::Const, std::move(c), {}}; }
  static KGauge named(GaugeKind k) { return {k, from_int<T>(1), {}}; }
  static KGauge tabulated(std::map<std::int64_t, T> values) {
    return {GaugeKind::Custom, from_int<T>(1), std::move(values)};
  }
};

enum class AnsatzKind { Splitting, Substitution, General };
std::string_view ansatz_name(AnsatzKind kind);

template <Scalar T>
struct QFTerm {
  std::int64_t n = 0;
  T lambda;
  T rho;
  /// E_{n+1} - λₙEₙ - ρₙE_{n-1}; empty at n = 0 where E_{-1} does not exist.
  std::optional<T> residual;
};

template <Scalar T>
struct QFSolution {
  OscillatorModel<T> model;
  AnsatzKind ansatz = AnsatzKind::General;
  std::optional<T> initial_lambda;  // substitution: λ₀ = c
  std::optional<KGauge<T>> gauge;   // general
  std::vector<QFTerm<T>> terms;     // ascending n
  /// μ-oscillator only: every term equals the known closed form.
  std::optional<bool> closed_form_agrees;
  /// Substitution only: the recursion and the alternating-sum form agree.
  std::optional<bool> recursion_agrees;

  const QFTerm<T>* find(std::int64_t n) const {
    for (const auto& t : terms) {
      if (t.n == n) return &t;
    }
    return nullptr;
  }
};

/// Coefficients from φ(n+1) = λₙφ(n) + ρₙφ(n-1), φ(n+2) = λₙφ(n+1) + ρₙφ(n), for n = 1..n_max-2.
/// Errors: UnsupportedKind (FiveParam), DegeneratePhiWindow.
template <Scalar T>
QFSolution<T> qf_splitting(const OscillatorModel<T>& model, std::int64_t n_max);

/// E₁/E₀, the default substitution constant.
template <Scalar T>
T default_substitution_constant(const EnergySequence<T>& energies);

/// ρₙ = λ_{n-1} with λ₀ = c (default E₁/E₀), for n = 1..n_max-1.
/// λₙ = (Σ_{k=2}^{n+1} (-1)^{n-k+1} E_k + (-1)ⁿ c E₀)/Eₙ. Errors: ZeroEnergy.
template <Scalar T>
QFSolution<T> qf_substitution(const EnergySequence<T>& energies, std::type_identity_t<std::optional<T>> c, std::int64_t n_max);

/// General solution with gauge K, for the μ-oscillator (n = 0..n_max-1) and for the
/// mixed (μ;p,q) and six-parameter families (n = 1..n_max-1). n = 0 is dropped when the
/// gauge is undefined there.
/// Errors: UnsupportedKind, GaugeDomainError.
template <Scalar T>
QFSolution<T> qf_general(const OscillatorModel<T>& model, const KGauge<T>& gauge, std::int64_t n_max);

/// (λₙ, ρₙ) of the general solution at one n for a given K value.
template <Scalar T>
std::pair<T, T> general_coefficients(const OscillatorModel<T>& model, std::int64_t n, const T& k);

/// K(n). Named gauges are μ-oscillator only; their value is re-derived from the general
/// solution where possible, falling back to the closed form where the derivation is
/// undefined (e.g. n = 0 for K1). Errors: UnsupportedKind, GaugeDomainError.
template <Scalar T>
T gauge_eval(const KGauge<T>& gauge, const OscillatorModel<T>& model, std::int64_t n);

template <Scalar T>
struct GaugeConstraint {
  enum class Kind { RhoEquals, LambdaEquals };
  Kind kind;
  T value;

  static GaugeConstraint rho_equals(T v) { return {Kind::RhoEquals, std::move(v)}; }
  static GaugeConstraint lambda_equals(T v) { return {Kind::LambdaEquals, std::move(v)}; }
};

template <Scalar T>
struct ConstrainedGauge {
  T k;
  T other;  // λₙ for a ρ constraint, ρₙ for a λ constraint
};

/// Solves the general solution for the K that meets the constraint at n (μ-oscillator).
/// Errors: UnsupportedKind, UnsolvableConstraint.
template <Scalar T>
ConstrainedGauge<T> gauge_for_constraint(const OscillatorModel<T>& model, const GaugeConstraint<T>& constraint,
                                         std::int64_t n);

template <Scalar T>
struct Table1Row {
  std::int64_t n = 0;
  T lambda;
  T rho;
  T energy;
  bool matches_closed_form = false;
};

/// Rows n = 0..5 of the μ-oscillator coefficients at K = 1.
template <Scalar T>
std::vector<Table1Row<T>> table1(const T& mu);

template <Scalar T>
struct QFCheck {
  T max_abs_residual = from_int<T>(0);
  double max_relative_residual = 0.0;
  std::vector<std::int64_t> violations;
  std::int64_t checked = 0;

  bool ok() const { return violations.empty(); }
};

/// Recomputes every residual from the energies alone.
template <Scalar T>
QFCheck<T> verify_qf(const EnergySequence<T>& energies, const QFSolution<T>& solution);

/// One comparison between a closed-form expression and the value derived from the
/// general solution, over a range of n.
template <Scalar T>
struct AuditEntry {
  std::string name;
  std::int64_t checked = 0;
  std::optional<std::int64_t> first_mismatch;
  std::optional<T> closed_value;   // at first_mismatch
  std::optional<T> derived_value;  // at first_mismatch

  bool agrees() const { return checked > 0 && !first_mismatch; }
};

/// Audits every μ-oscillator closed form for n = 0..n_max.
template <Scalar T>
std::vector<AuditEntry<T>> audit_closed_forms(const T& mu, std::int64_t n_max);

}  // namespace qfib
