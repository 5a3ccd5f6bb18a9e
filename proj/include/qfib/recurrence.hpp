#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "qfib/linsolve.hpp"
#include "qfib/models.hpp"

namespace qfib {

/// Constant (λ, ρ) solving E_{n+1} = λEₙ + ρE_{n-1} and E_{n+2} = λE_{n+1} + ρEₙ.
template <Scalar T>
struct FibonacciFit {
  T lambda;
  T rho;
  std::int64_t window_n = 0;
};

template <Scalar T>
struct FibonacciConstants {
  T lambda;
  T rho;
  friend bool operator==(const FibonacciConstants&, const FibonacciConstants&) = default;
};

namespace verdict {

template <Scalar T>
struct Fibonacci {
  T lambda;
  T rho;
};

/// Minimal constant-coefficient relation of order k ≥ 3: Eₙ = Σ αᵢ E_{n-i}.
template <Scalar T>
struct KBonacci {
  int k = 0;
  Vector<T> coefficients;
};

/// Two windows whose fits disagree; a complete disproof of constant (λ, ρ).
template <Scalar T>
struct NonFibonacci {
  FibonacciFit<T> first;
  FibonacciFit<T> second;
};

}  // namespace verdict

template <Scalar T>
using Verdict = std::variant<verdict::Fibonacci<T>, verdict::KBonacci<T>, verdict::NonFibonacci<T>>;

template <Scalar T>
struct RecurrenceReport {
  Verdict<T> verdict;
  std::vector<FibonacciFit<T>> per_window_fits;
  std::vector<std::int64_t> degenerate_windows;
  std::optional<int> minimal_order;
  std::int64_t n_max = 0;

  bool is_fibonacci() const { return std::holds_alternative<verdict::Fibonacci<T>>(verdict); }
  const verdict::NonFibonacci<T>* witness() const { return std::get_if<verdict::NonFibonacci<T>>(&verdict); }
};

/// Fit at window n (1 ≤ n ≤ n_max - 2). DegenerateWindow when E_{n+1}E_{n-1} - Eₙ² vanishes
/// (exactly, or below 1e-12·Eₙ² in Float).
template <Scalar T>
FibonacciFit<T> fit_fibonacci_window(const EnergySequence<T>& energies, std::int64_t n);

/// Fits every window and compares. Verdict is Fibonacci or NonFibonacci; minimal_order is
/// left empty. Requires n_max ≥ 4.
template <Scalar T>
RecurrenceReport<T> classify_fibonacci(const EnergySequence<T>& energies);

enum class KFitStatus { Consistent, Underdetermined, Inconsistent };

template <Scalar T>
struct KBonacciFit {
  KFitStatus status = KFitStatus::Inconsistent;
  int k = 0;
  Eigen::Index rank = 0;
  /// Unique solution (Consistent) or a particular solution (Underdetermined).
  std::optional<Vector<T>> coefficients;
  /// Smallest n for which the equations up to Eₙ are already inconsistent.
  std::optional<std::int64_t> witness_n;
};

/// Solves Eₙ = α₁E_{n-1} + … + α_kE_{n-k} over n = k..n_max. Requires n_max ≥ 2k + 1.
template <Scalar T>
KBonacciFit<T> fit_kbonacci(const EnergySequence<T>& energies, int k);

/// Smallest k in 2..k_max whose fit is not Inconsistent. Requires n_max ≥ 2·k_max + 1.
template <Scalar T>
std::optional<int> minimal_order(const EnergySequence<T>& energies, int k_max);

/// classify_fibonacci, then the order search when the sequence is not Fibonacci.
/// A consistent minimal order k ≥ 3 upgrades the verdict to KBonacci.
template <Scalar T>
RecurrenceReport<T> classify(const EnergySequence<T>& energies, int k_max);

/// Known constants of the Fibonacci families (AC, BM, TD, PQ, FiveParam), and of the
/// μ-families at μ = 0 where they collapse onto one. nullopt means not applicable.
template <Scalar T>
std::optional<FibonacciConstants<T>> closed_form_fibonacci(const OscillatorModel<T>& model);

}  // namespace qfib
