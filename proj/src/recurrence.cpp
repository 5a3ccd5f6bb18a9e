#include "qfib/recurrence.hpp"

#include <algorithm>
#include <string>

namespace qfib {

namespace {

template <Scalar T>
bool window_degenerate(const T& denominator, const T& center) {
  if constexpr (is_exact_v<T>) {
    return denominator.is_zero();
  } else {
    return std::fabs(denominator) < tolerance::kDegenerate * center * center;
  }
}

template <Scalar T>
bool same_fit(const FibonacciFit<T>& a, const FibonacciFit<T>& b) {
  return same_value(a.lambda, b.lambda, tolerance::kFitAgreement) &&
         same_value(a.rho, b.rho, tolerance::kFitAgreement);
}

}  // namespace

template <Scalar T>
FibonacciFit<T> fit_fibonacci_window(const EnergySequence<T>& energies, std::int64_t n) {
  if (n < 1 || n > energies.n_max() - 2) {
    fail(ErrorCode::PreconditionViolated,
         "window n=" + std::to_string(n) + " outside 1.." + std::to_string(energies.n_max() - 2));
  }
  const T& e0 = energies[n - 1];
  const T& e1 = energies[n];
  const T& e2 = energies[n + 1];
  const T& e3 = energies[n + 2];
  const T denominator = e2 * e0 - e1 * e1;
  if (window_degenerate(denominator, e1)) {
    fail(ErrorCode::DegenerateWindow, "window n=" + std::to_string(n) + " has a vanishing determinant");
  }
  return {(e3 * e0 - e2 * e1) / denominator, (e2 * e2 - e3 * e1) / denominator, n};
}

template <Scalar T>
RecurrenceReport<T> classify_fibonacci(const EnergySequence<T>& energies) {
  if (energies.n_max() < 4) {
    fail(ErrorCode::PreconditionViolated, "classification needs n_max >= 4, got " + std::to_string(energies.n_max()));
  }
  RecurrenceReport<T> report{verdict::Fibonacci<T>{}, {}, {}, std::nullopt, energies.n_max()};
  for (std::int64_t n = 1; n <= energies.n_max() - 2; ++n) {
    try {
      report.per_window_fits.push_back(fit_fibonacci_window(energies, n));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateWindow) throw;
      report.degenerate_windows.push_back(n);
    }
  }
  if (report.per_window_fits.empty()) {
    fail(ErrorCode::AllWindowsDegenerate, "every window of the sequence is degenerate");
  }
  const FibonacciFit<T>& reference = report.per_window_fits.front();
  const auto mismatch = std::find_if(report.per_window_fits.begin() + 1, report.per_window_fits.end(),
                                     [&](const FibonacciFit<T>& f) { return !same_fit(reference, f); });
  if (mismatch == report.per_window_fits.end()) {
    report.verdict = verdict::Fibonacci<T>{reference.lambda, reference.rho};
  } else {
    report.verdict = verdict::NonFibonacci<T>{reference, *mismatch};
  }
  return report;
}

template <Scalar T>
KBonacciFit<T> fit_kbonacci(const EnergySequence<T>& energies, int k) {
  if (k < 2) fail(ErrorCode::PreconditionViolated, "k-bonacci order must be at least 2");
  const std::int64_t n_max = energies.n_max();
  if (n_max < 2 * static_cast<std::int64_t>(k) + 1) {
    fail(ErrorCode::InsufficientData,
         "order " + std::to_string(k) + " needs n_max >= " + std::to_string(2 * k + 1) + ", got " +
             std::to_string(n_max));
  }
  const auto rows = static_cast<Eigen::Index>(n_max - k + 1);
  Matrix<T> a(rows, k);
  Vector<T> b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::int64_t n = k + r;
    for (int i = 0; i < k; ++i) a(r, i) = energies[n - 1 - i];
    b(r) = energies[n];
  }

  SystemSolution<T> sol;
  if constexpr (is_exact_v<T>) {
    sol = solve_exact(a, b);
  } else {
    double scale = 0.0;
    for (const double e : energies.values) scale = std::max(scale, std::fabs(e));
    sol = solve_least_squares(a, b, tolerance::kFitAgreement * scale);
  }

  KBonacciFit<T> out;
  out.k = k;
  out.rank = sol.rank;
  switch (sol.status) {
    case SystemStatus::Unique:
      out.status = KFitStatus::Consistent;
      break;
    case SystemStatus::Underdetermined:
      out.status = KFitStatus::Underdetermined;
      break;
    case SystemStatus::Inconsistent:
      out.status = KFitStatus::Inconsistent;
      if (sol.first_violating_row) out.witness_n = k + *sol.first_violating_row;
      break;
  }
  out.coefficients = std::move(sol.solution);
  return out;
}

template <Scalar T>
std::optional<int> minimal_order(const EnergySequence<T>& energies, int k_max) {
  if (k_max < 2) fail(ErrorCode::PreconditionViolated, "k_max must be at least 2");
  if (energies.n_max() < 2 * static_cast<std::int64_t>(k_max) + 1) {
    fail(ErrorCode::InsufficientData, "order search up to " + std::to_string(k_max) + " needs n_max >= " +
                                          std::to_string(2 * k_max + 1));
  }
  for (int k = 2; k <= k_max; ++k) {
    if (fit_kbonacci(energies, k).status != KFitStatus::Inconsistent) return k;
  }
  return std::nullopt;
}

template <Scalar T>
RecurrenceReport<T> classify(const EnergySequence<T>& energies, int k_max) {
  RecurrenceReport<T> report = classify_fibonacci(energies);
  const int usable = static_cast<int>(std::min<std::int64_t>(k_max, (energies.n_max() - 1) / 2));
  if (usable < 2) return report;
  report.minimal_order = minimal_order(energies, usable);
  if (!report.is_fibonacci() && report.minimal_order && *report.minimal_order >= 3) {
    const int k = *report.minimal_order;
    KBonacciFit<T> fit = fit_kbonacci(energies, k);
    report.verdict = verdict::KBonacci<T>{k, *fit.coefficients};
  }
  return report;
}

template <Scalar T>
std::optional<FibonacciConstants<T>> closed_form_fibonacci(const OscillatorModel<T>& model) {
  const auto& s = model.spec();
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  switch (model.kind()) {
    case ModelKind::AC:
      return FibonacciConstants<T>{one + s.q, -s.q};
    case ModelKind::BM:
      return FibonacciConstants<T>{s.q + one / s.q, -one};
    case ModelKind::TD:
      return FibonacciConstants<T>{two * s.q, -(s.q * s.q)};
    case ModelKind::PQ:
      return FibonacciConstants<T>{s.p + s.q, -(s.p * s.q)};
    case ModelKind::FiveParam: {
      const T qa = spow(s.q, s.alpha);
      const T pa = spow(one / s.p, s.alpha);
      return FibonacciConstants<T>{qa + pa, -(qa * pa)};
    }
    case ModelKind::Mu:
      if (is_zero(s.mu)) return FibonacciConstants<T>{two, -one};
      return std::nullopt;
    case ModelKind::MixedMuPQ:
    case ModelKind::MixedMuPQPsi:
    case ModelKind::MixedMuPQChi:
      if (is_zero(s.mu)) return FibonacciConstants<T>{s.p + s.q, -(s.p * s.q)};
      return std::nullopt;
    case ModelKind::SixParam:
      if (is_zero(s.mu) && is_zero(s.beta)) {
        const BracketRecurrence<T> rec = mixed_bracket_recurrence(model);
        return FibonacciConstants<T>{rec.trace, -rec.det};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

#define QFIB_INSTANTIATE_RECURRENCE(T)                                                               \
  template FibonacciFit<T> fit_fibonacci_window(const EnergySequence<T>&, std::int64_t);             \
  template RecurrenceReport<T> classify_fibonacci(const EnergySequence<T>&);                         \
  template KBonacciFit<T> fit_kbonacci(const EnergySequence<T>&, int);                               \
  template std::optional<int> minimal_order(const EnergySequence<T>&, int);                          \
  template RecurrenceReport<T> classify(const EnergySequence<T>&, int);                              \
  template std::optional<FibonacciConstants<T>> closed_form_fibonacci(const OscillatorModel<T>&);

QFIB_INSTANTIATE_RECURRENCE(Rational)
QFIB_INSTANTIATE_RECURRENCE(double)

#undef QFIB_INSTANTIATE_RECURRENCE

}  // namespace qfib
