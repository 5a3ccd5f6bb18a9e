#include "qfib/quasifib.hpp"

#include <array>
#include <functional>
#include <stdexcept>

#include "qfib/closed_forms.hpp"

namespace qfib {

namespace {

constexpr std::array<std::pair<GaugeKind, std::string_view>, 7> kGaugeNames{{
    {GaugeKind::Const, "const"},
    {GaugeKind::K1, "k1"},
    {GaugeKind::K2, "k2"},
    {GaugeKind::RhoNegOne, "rho-neg-one"},
    {GaugeKind::LambdaTwo, "lambda-two"},
    {GaugeKind::Cubic, "cubic"},
    {GaugeKind::Custom, "custom"},
}};

template <Scalar T>
T div_or(const T& num, const T& den, ErrorCode code, const char* what) {
  if (is_zero(den)) fail(code, what);
  return num / den;
}

template <Scalar T>
bool agree(const T& a, const T& b) {
  return same_value(a, b, tolerance::kFitAgreement);
}

template <Scalar T>
T residual_at(const std::function<T(std::int64_t)>& e, std::int64_t n, const T& lambda, const T& rho) {
  return e(n + 1) - lambda * e(n) - rho * e(n - 1);
}

void require_mu_model(ModelKind kind, const char* what) {
  if (kind != ModelKind::Mu) {
    fail(ErrorCode::UnsupportedKind, std::string(what) + " is defined for the mu-oscillator only");
  }
}

/// λₙ from the splitting system; nullopt where the window is undefined.
template <Scalar T>
std::optional<std::pair<T, T>> splitting_pair(const OscillatorModel<T>& model, std::int64_t n) {
  if (n < 1) return std::nullopt;
  const T f0 = structure_fn(model, n - 1);
  const T f1 = structure_fn(model, n);
  const T f2 = structure_fn(model, n + 1);
  const T f3 = structure_fn(model, n + 2);
  const T den = f1 * f1 - f2 * f0;
  bool degenerate = is_zero(den) || is_zero(f1);
  if constexpr (!is_exact_v<T>) {
    degenerate = degenerate || std::fabs(den) < tolerance::kDegenerate * f1 * f1;
  }
  if (degenerate) return std::nullopt;
  const T rho = (f3 * f1 - f2 * f2) / den;
  const T lambda = (f2 - rho * f0) / f1;
  return std::pair<T, T>{lambda, rho};
}

/// λₙ of the substitution ansatz from the alternating sum, energies supplied by `e`.
template <Scalar T>
T substitution_lambda_sum(const std::function<T(std::int64_t)>& e, const T& c, std::int64_t n) {
  if (n == 0) return c;
  T acc = from_int<T>(0);
  for (std::int64_t k = 2; k <= n + 1; ++k) {
    const bool negative = (n - k + 1) % 2 != 0;
    acc += negative ? -e(k) : e(k);
  }
  acc += (n % 2 == 0 ? c : -c) * e(0);
  return div_or(acc, e(n), ErrorCode::ZeroEnergy, "zero energy in substitution ansatz");
}

/// K that makes the general μ-solution produce a given λₙ.
template <Scalar T>
T invert_lambda(const T& mu, std::int64_t n, const T& lambda) {
  const T one = from_int<T>(1);
  const T m = from_int<T>(n);
  return one + from_int<T>(2) * (one + mu * (m + one)) / (one + mu * (m + from_int<T>(2))) - lambda;
}

template <Scalar T>
std::optional<T> derived_gauge(GaugeKind kind, const OscillatorModel<T>& model, std::int64_t n) {
  const T& mu = model.spec().mu;
  switch (kind) {
    case GaugeKind::K1: {
      const auto pair = splitting_pair(model, n);
      if (!pair) return std::nullopt;
      return invert_lambda(mu, n, pair->first);
    }
    case GaugeKind::K2: {
      const std::function<T(std::int64_t)> e = [&](std::int64_t j) { return energy(model, j); };
      const T c = e(1) / e(0);
      return invert_lambda(mu, n, substitution_lambda_sum(e, c, n));
    }
    case GaugeKind::RhoNegOne:
    case GaugeKind::LambdaTwo: {
      const auto constraint = kind == GaugeKind::RhoNegOne ? GaugeConstraint<T>::rho_equals(from_int<T>(-1))
                                                           : GaugeConstraint<T>::lambda_equals(from_int<T>(2));
      try {
        return gauge_for_constraint(model, constraint, n).k;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsolvableConstraint) throw;
        return std::nullopt;
      }
    }
    default:
      return std::nullopt;
  }
}

template <Scalar T>
std::optional<T> closed_gauge(GaugeKind kind, const T& mu, std::int64_t n) {
  try {
    switch (kind) {
      case GaugeKind::K1: return closed_form::k_splitting(mu, n);
      case GaugeKind::K2: return closed_form::k_substitution(mu, n);
      case GaugeKind::RhoNegOne: return closed_form::k_rho_minus_one(mu, n);
      case GaugeKind::LambdaTwo: return closed_form::k_lambda_two(mu, n);
      case GaugeKind::Cubic: return closed_form::k_cubic(mu, n);
      default: return std::nullopt;
    }
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

template <typename R>
std::optional<R> try_eval(const std::function<R()>& f) {
  try {
    return f();
  } catch (const std::out_of_range&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::string_view gauge_name(GaugeKind kind) {
  for (const auto& [k, name] : kGaugeNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<GaugeKind> parse_gauge_name(std::string_view name) {
  for (const auto& [k, n] : kGaugeNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view ansatz_name(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Splitting: return "splitting";
    case AnsatzKind::Substitution: return "substitution";
    case AnsatzKind::General: return "general";
  }
  return "unknown";
}

template <Scalar T>
QFSolution<T> qf_splitting(const OscillatorModel<T>& model, std::int64_t n_max) {
  if (!has_structure_function(model.kind())) {
    fail(ErrorCode::UnsupportedKind, "the splitting ansatz needs a structure function");
  }
  if (n_max < 3) fail(ErrorCode::PreconditionViolated, "splitting ansatz needs n_max >= 3");
  QFSolution<T> sol{model, AnsatzKind::Splitting, std::nullopt, std::nullopt, {}, std::nullopt, std::nullopt};
  const std::function<T(std::int64_t)> e = [&](std::int64_t j) { return energy(model, j); };
  bool closed_ok = true;
  for (std::int64_t n = 1; n <= n_max - 2; ++n) {
    const auto pair = splitting_pair(model, n);
    if (!pair) {
      fail(ErrorCode::DegeneratePhiWindow, "structure-function window at n=" + std::to_string(n) + " is degenerate");
    }
    const auto& [lambda, rho] = *pair;
    if (model.kind() == ModelKind::Mu) {
      const T& mu = model.spec().mu;
      closed_ok = closed_ok && agree(lambda, closed_form::splitting_lambda(mu, n)) &&
                  agree(rho, closed_form::splitting_rho(mu, n));
    }
    sol.terms.push_back({n, lambda, rho, residual_at(e, n, lambda, rho)});
  }
  if (model.kind() == ModelKind::Mu) sol.closed_form_agrees = closed_ok;
  return sol;
}

template <Scalar T>
T default_substitution_constant(const EnergySequence<T>& energies) {
  return div_or(energies[1], energies[0], ErrorCode::ZeroEnergy, "E0 vanishes");
}

template <Scalar T>
QFSolution<T> qf_substitution(const EnergySequence<T>& energies, std::type_identity_t<std::optional<T>> c, std::int64_t n_max) {
  if (n_max < 2 || n_max > energies.n_max()) {
    fail(ErrorCode::PreconditionViolated, "substitution ansatz needs 2 <= n_max <= " + std::to_string(energies.n_max()));
  }
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (is_zero(energies[n])) fail(ErrorCode::ZeroEnergy, "E" + std::to_string(n) + " vanishes");
  }
  const T c0 = c ? *c : default_substitution_constant(energies);
  const std::function<T(std::int64_t)> e = [&](std::int64_t j) { return energies[j]; };

  // λ_{n+1} = (E_{n+2} - Eₙλₙ)/E_{n+1}, run independently of the closed sum.
  std::vector<T> recursive{c0};
  for (std::int64_t n = 0; n + 1 <= n_max - 1; ++n) {
    const T& lam = recursive.back();
    recursive.push_back((energies[n + 2] - energies[n] * lam) / energies[n + 1]);
  }

  QFSolution<T> sol{energies.model, AnsatzKind::Substitution, c0, std::nullopt, {}, std::nullopt, std::nullopt};
  const bool mu_default = energies.model.kind() == ModelKind::Mu && c0 == default_substitution_constant(energies);
  bool recursion_ok = true;
  bool closed_ok = true;
  T previous = c0;
  for (std::int64_t n = 1; n <= n_max - 1; ++n) {
    const T lambda = substitution_lambda_sum(e, c0, n);
    const T rho = previous;
    recursion_ok = recursion_ok && agree(lambda, recursive[static_cast<std::size_t>(n)]);
    if (mu_default) {
      const T& mu = energies.model.spec().mu;
      closed_ok = closed_ok && agree(lambda, closed_form::substitution_lambda(mu, n)) &&
                  agree(rho, closed_form::substitution_rho(mu, n));
    }
    sol.terms.push_back({n, lambda, rho, residual_at(e, n, lambda, rho)});
    previous = lambda;
  }
  sol.recursion_agrees = recursion_ok;
  if (mu_default) sol.closed_form_agrees = closed_ok;
  return sol;
}

template <Scalar T>
std::pair<T, T> general_coefficients(const OscillatorModel<T>& model, std::int64_t n, const T& k) {
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  const T& mu = model.spec().mu;
  const T w0 = one + mu * (m - one);  // 1+μ(n-1)
  const T w1 = one + mu * m;
  const T w2 = one + mu * (m + one);
  const T w3 = one + mu * (m + two);
  const char* domain = "general solution undefined at this n";

  if (model.kind() == ModelKind::Mu) {
    const T lambda = one - k + two * w2 / w3;
    const T prefactor = div_or(w0, one + two * (m - one) * w1, ErrorCode::GaugeDomainError, domain);
    const T rho = prefactor * (k * (two * (m + one) * w1 - one) / w2 - from_int<T>(4) * m * w2 / w3);
    return {lambda, rho};
  }
  if (!has_mixed_bracket(model)) {
    fail(ErrorCode::UnsupportedKind,
         "no general solution for model " + std::string(model_name(model.kind())));
  }
  if (n < 1) fail(ErrorCode::PreconditionViolated, "mixed-family general solution starts at n = 1");
  // The (μ;p,q) form with [2] → trace and pq → det of the bracket recurrence.
  const BracketRecurrence<T> rec = mixed_bracket_recurrence(model);
  const T b_prev = mixed_bracket(model, n - 1);
  const T b = mixed_bracket(model, n);
  const T b_next = mixed_bracket(model, n + 1);
  const T lambda = one - k + rec.trace * w2 / w3;
  const T prefactor = div_or(w0, b * w0 + b_prev * w1, ErrorCode::GaugeDomainError, domain);
  const T brace = k * (b + b_next * w1 / w2) - b * (one + (rec.trace * w2 + rec.det * w1) / w3);
  return {lambda, prefactor * brace};
}

template <Scalar T>
T gauge_eval(const KGauge<T>& gauge, const OscillatorModel<T>& model, std::int64_t n) {
  switch (gauge.kind) {
    case GaugeKind::Const:
      return gauge.constant;
    case GaugeKind::Custom: {
      const auto it = gauge.table.find(n);
      if (it == gauge.table.end()) {
        fail(ErrorCode::GaugeDomainError, "custom gauge has no value at n=" + std::to_string(n));
      }
      return it->second;
    }
    default:
      break;
  }
  require_mu_model(model.kind(), "this gauge");
  if (auto derived = derived_gauge(gauge.kind, model, n)) return *derived;
  if (auto closed = closed_gauge(gauge.kind, model.spec().mu, n)) return *closed;
  fail(ErrorCode::GaugeDomainError,
       std::string("gauge ") + std::string(gauge_name(gauge.kind)) + " is undefined at n=" + std::to_string(n));
}

template <Scalar T>
QFSolution<T> qf_general(const OscillatorModel<T>& model, const KGauge<T>& gauge, std::int64_t n_max) {
  if (model.kind() != ModelKind::Mu && !has_mixed_bracket(model)) {
    fail(ErrorCode::UnsupportedKind,
         "the general solution covers mu, mixed and sixparam models, not " + std::string(model_name(model.kind())));
  }
  if (n_max < 2) fail(ErrorCode::PreconditionViolated, "general solution needs n_max >= 2");
  QFSolution<T> sol{model, AnsatzKind::General, std::nullopt, gauge, {}, std::nullopt, std::nullopt};
  const std::function<T(std::int64_t)> e = [&](std::int64_t j) { return energy(model, j); };
  const std::int64_t first = model.kind() == ModelKind::Mu ? 0 : 1;
  for (std::int64_t n = first; n <= n_max - 1; ++n) {
    std::optional<std::pair<T, T>> coeffs;
    try {
      coeffs = general_coefficients(model, n, gauge_eval(gauge, model, n));
    } catch (const Error& e) {
      // n = 0 carries no residual; a gauge undefined there only shortens the sequence.
      if (n == 0 && e.code() == ErrorCode::GaugeDomainError) continue;
      throw;
    }
    auto& [lambda, rho] = *coeffs;
    std::optional<T> residual;
    if (n >= 1) residual = residual_at(e, n, lambda, rho);
    sol.terms.push_back({n, std::move(lambda), std::move(rho), std::move(residual)});
  }
  return sol;
}

template <Scalar T>
ConstrainedGauge<T> gauge_for_constraint(const OscillatorModel<T>& model, const GaugeConstraint<T>& constraint,
                                         std::int64_t n) {
  require_mu_model(model.kind(), "constraint gauges");
  const T one = from_int<T>(1);
  const T two = from_int<T>(2);
  const T m = from_int<T>(n);
  const T& mu = model.spec().mu;
  const T w1 = one + mu * m;
  const T w2 = one + mu * (m + one);
  const T w3 = one + mu * (m + two);

  if (constraint.kind == GaugeConstraint<T>::Kind::LambdaEquals) {
    const T k = invert_lambda(mu, n, constraint.value);
    return {k, general_coefficients(model, n, k).second};
  }
  // ρₙ = A (K·B - C), affine in K.
  const T a_den = one + two * (m - one) * w1;
  if (is_zero(a_den)) fail(ErrorCode::UnsolvableConstraint, "rho prefactor undefined at n=" + std::to_string(n));
  const T a = (one + mu * (m - one)) / a_den;
  const T b = (two * (m + one) * w1 - one) / w2;
  const T c = from_int<T>(4) * m * w2 / w3;
  if (is_zero(a) || is_zero(b)) {
    fail(ErrorCode::UnsolvableConstraint, "rho does not depend on K at n=" + std::to_string(n));
  }
  const T k = (constraint.value / a + c) / b;
  return {k, general_coefficients(model, n, k).first};
}

template <Scalar T>
std::vector<Table1Row<T>> table1(const T& mu) {
  ModelSpec<T> spec;
  spec.kind = ModelKind::Mu;
  spec.mu = mu;
  const auto model = make_model(spec);
  const auto sol = qf_general(model, KGauge<T>::constant_gauge(from_int<T>(1)), 6);
  std::vector<Table1Row<T>> rows;
  for (const auto& term : sol.terms) {
    Table1Row<T> row{term.n, term.lambda, term.rho, energy(model, term.n), false};
    if (const auto ref = try_eval<closed_form::TableRow<T>>([&] { return closed_form::table_row(mu, term.n); })) {
      row.matches_closed_form = agree(row.lambda, ref->lambda) && agree(row.rho, ref->rho) && agree(row.energy, ref->energy);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T>
QFCheck<T> verify_qf(const EnergySequence<T>& energies, const QFSolution<T>& solution) {
  QFCheck<T> check;
  for (const auto& term : solution.terms) {
    if (term.n < 1) continue;
    if (term.n + 1 > energies.n_max()) {
      fail(ErrorCode::PreconditionViolated, "energies end before n=" + std::to_string(term.n + 1));
    }
    const T r = energies[term.n + 1] - term.lambda * energies[term.n] - term.rho * energies[term.n - 1];
    const T magnitude = abs_value(r);
    if (magnitude > check.max_abs_residual) check.max_abs_residual = magnitude;
    const double scale = std::fabs(to_double(energies[term.n + 1]));
    const double relative = scale == 0.0 ? to_double(magnitude) : to_double(magnitude) / scale;
    check.max_relative_residual = std::max(check.max_relative_residual, relative);
    bool bad = false;
    if constexpr (is_exact_v<T>) {
      bad = !r.is_zero();
    } else {
      bad = !(magnitude <= tolerance::kResidual * scale);
    }
    if (bad) check.violations.push_back(term.n);
    ++check.checked;
  }
  return check;
}

template <Scalar T>
std::vector<AuditEntry<T>> audit_closed_forms(const T& mu, std::int64_t n_max) {
  ModelSpec<T> spec;
  spec.kind = ModelKind::Mu;
  spec.mu = mu;
  const auto model = make_model(spec);
  const std::function<T(std::int64_t)> e = [&](std::int64_t j) { return energy(model, j); };
  const T c = e(1) / e(0);

  using Eval = std::function<T(std::int64_t)>;
  auto audit = [&](std::string name, const Eval& closed, const Eval& derived, std::int64_t lo, std::int64_t hi) {
    AuditEntry<T> entry{std::move(name), 0, std::nullopt, std::nullopt, std::nullopt};
    for (std::int64_t n = lo; n <= hi; ++n) {
      const auto cv = try_eval<T>([&] { return closed(n); });
      const auto dv = try_eval<T>([&] { return derived(n); });
      if (!cv || !dv) continue;
      ++entry.checked;
      if (!agree(*cv, *dv) && !entry.first_mismatch) {
        entry.first_mismatch = n;
        entry.closed_value = cv;
        entry.derived_value = dv;
      }
    }
    return entry;
  };
  auto split = [&](std::int64_t n) {
    const auto p = splitting_pair(model, n);
    if (!p) throw std::domain_error("degenerate");
    return *p;
  };
  auto rho_minus_one = [&](std::int64_t n) {
    return gauge_for_constraint(model, GaugeConstraint<T>::rho_equals(from_int<T>(-1)), n);
  };
  auto lambda_two = [&](std::int64_t n) {
    return gauge_for_constraint(model, GaugeConstraint<T>::lambda_equals(from_int<T>(2)), n);
  };
  auto cubic = [&](std::int64_t n) { return general_coefficients(model, n, closed_form::k_cubic(mu, n)); };
  auto table = [&](std::int64_t n, int field) {
    const auto row = general_coefficients(model, n, from_int<T>(1));
    return field == 0 ? row.first : field == 1 ? row.second : e(n);
  };

  const std::int64_t table_hi = std::min<std::int64_t>(5, n_max);
  std::vector<AuditEntry<T>> out;
  out.push_back(audit("splitting_lambda", [&](auto n) { return closed_form::splitting_lambda(mu, n); },
                      [&](auto n) { return split(n).first; }, 1, n_max));
  out.push_back(audit("splitting_rho", [&](auto n) { return closed_form::splitting_rho(mu, n); },
                      [&](auto n) { return split(n).second; }, 1, n_max));
  out.push_back(audit("substitution_lambda", [&](auto n) { return closed_form::substitution_lambda(mu, n); },
                      [&](auto n) { return substitution_lambda_sum(e, c, n); }, 1, n_max));
  out.push_back(audit("substitution_rho", [&](auto n) { return closed_form::substitution_rho(mu, n); },
                      [&](auto n) { return substitution_lambda_sum(e, c, n - 1); }, 1, n_max));
  out.push_back(audit("k_splitting", [&](auto n) { return closed_form::k_splitting(mu, n); },
                      [&](auto n) { return invert_lambda(mu, n, split(n).first); }, 1, n_max));
  out.push_back(audit("k_substitution", [&](auto n) { return closed_form::k_substitution(mu, n); },
                      [&](auto n) { return invert_lambda(mu, n, substitution_lambda_sum(e, c, n)); }, 0, n_max));
  out.push_back(audit("k_rho_minus_one", [&](auto n) { return closed_form::k_rho_minus_one(mu, n); },
                      [&](auto n) { return rho_minus_one(n).k; }, 0, n_max));
  out.push_back(audit("lambda_rho_minus_one", [&](auto n) { return closed_form::lambda_rho_minus_one(mu, n); },
                      [&](auto n) { return rho_minus_one(n).other; }, 0, n_max));
  out.push_back(audit("k_lambda_two", [&](auto n) { return closed_form::k_lambda_two(mu, n); },
                      [&](auto n) { return lambda_two(n).k; }, 0, n_max));
  out.push_back(audit("rho_lambda_two", [&](auto n) { return closed_form::rho_lambda_two(mu, n); },
                      [&](auto n) { return lambda_two(n).other; }, 0, n_max));
  out.push_back(audit("cubic_lambda", [&](auto n) { return closed_form::cubic_lambda(mu, n); },
                      [&](auto n) { return cubic(n).first; }, 0, n_max));
  out.push_back(audit("cubic_rho", [&](auto n) { return closed_form::cubic_rho(mu, n); },
                      [&](auto n) { return cubic(n).second; }, 0, n_max));
  out.push_back(audit("table_lambda", [&](auto n) { return closed_form::table_row(mu, n).lambda; },
                      [&](auto n) { return table(n, 0); }, 0, table_hi));
  out.push_back(audit("table_rho", [&](auto n) { return closed_form::table_row(mu, n).rho; },
                      [&](auto n) { return table(n, 1); }, 0, table_hi));
  out.push_back(audit("table_energy", [&](auto n) { return closed_form::table_row(mu, n).energy; },
                      [&](auto n) { return table(n, 2); }, 0, table_hi));
  return out;
}

#define QFIB_INSTANTIATE_QUASIFIB(T)                                                                              \
  template QFSolution<T> qf_splitting(const OscillatorModel<T>&, std::int64_t);                                   \
  template T default_substitution_constant(const EnergySequence<T>&);                                             \
  template QFSolution<T> qf_substitution(const EnergySequence<T>&, std::optional<T>, std::int64_t);               \
  template std::pair<T, T> general_coefficients(const OscillatorModel<T>&, std::int64_t, const T&);               \
  template T gauge_eval(const KGauge<T>&, const OscillatorModel<T>&, std::int64_t);                               \
  template QFSolution<T> qf_general(const OscillatorModel<T>&, const KGauge<T>&, std::int64_t);                   \
  template ConstrainedGauge<T> gauge_for_constraint(const OscillatorModel<T>&, const GaugeConstraint<T>&,         \
                                                    std::int64_t);                                                \
  template std::vector<Table1Row<T>> table1(const T&);                                                            \
  template QFCheck<T> verify_qf(const EnergySequence<T>&, const QFSolution<T>&);                                  \
  template std::vector<AuditEntry<T>> audit_closed_forms(const T&, std::int64_t);

QFIB_INSTANTIATE_QUASIFIB(Rational)
QFIB_INSTANTIATE_QUASIFIB(double)

#undef QFIB_INSTANTIATE_QUASIFIB

}  // namespace qfib
