#include "qfib/models.hpp"

#include <array>
#include <string>

namespace qfib {

namespace {

struct KindName {
  ModelKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 10> kKindNames{{
    {ModelKind::AC, "ac"},
    {ModelKind::BM, "bm"},
    {ModelKind::TD, "td"},
    {ModelKind::PQ, "pq"},
    {ModelKind::FiveParam, "fiveparam"},
    {ModelKind::Mu, "mu"},
    {ModelKind::MixedMuPQ, "mixed"},
    {ModelKind::MixedMuPQPsi, "mixed-psi"},
    {ModelKind::MixedMuPQChi, "mixed-chi"},
    {ModelKind::SixParam, "sixparam"},
}};

template <Scalar T>
std::string show(const T& x) {
  return format_scalar(x);
}

template <Scalar T>
bool is_integral(const T& x) {
  if constexpr (is_exact_v<T>) {
    return x.is_integer();
  } else {
    return true;
  }
}

void require_index(std::int64_t n, const char* what) {
  if (n < 0) fail(ErrorCode::PreconditionViolated, std::string(what) + ": index must be non-negative");
}

/// (qˣ - s^x)/(q^l - s^l) with s = 1/p, including the s → q limit (x/l) q^{x-l}.
template <Scalar T>
T five_param_bracket(const ModelSpec<T>& s, const T& x) {
  const T one = from_int<T>(1);
  const T inv_p = one / s.p;
  const T q_l = spow(s.q, s.l);
  const T s_l = spow(inv_p, s.l);
  if (coincide(q_l, s_l)) return x / s.l * spow(s.q, x - s.l);
  return (spow(s.q, x) - spow(inv_p, x)) / (q_l - s_l);
}

template <Scalar T>
T ac_bracket(const T& q, std::int64_t n) {
  const T one = from_int<T>(1);
  if (coincide(q, one)) return from_int<T>(n);
  return (ipow(q, n) - one) / (q - one);
}

template <Scalar T>
T bm_bracket(const T& q, std::int64_t n) {
  const T one = from_int<T>(1);
  const T inv = one / q;
  if (coincide(q, inv)) return from_int<T>(n);
  return (ipow(q, n) - ipow(inv, n)) / (q - inv);
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_name(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  return std::nullopt;
}

bool uses_q(ModelKind kind) { return kind != ModelKind::Mu; }

bool uses_p(ModelKind kind) {
  switch (kind) {
    case ModelKind::PQ:
    case ModelKind::FiveParam:
    case ModelKind::MixedMuPQ:
    case ModelKind::MixedMuPQPsi:
    case ModelKind::MixedMuPQChi:
    case ModelKind::SixParam:
      return true;
    default:
      return false;
  }
}

bool uses_mu(ModelKind kind) {
  switch (kind) {
    case ModelKind::Mu:
    case ModelKind::MixedMuPQ:
    case ModelKind::MixedMuPQPsi:
    case ModelKind::MixedMuPQChi:
    case ModelKind::SixParam:
      return true;
    default:
      return false;
  }
}

bool uses_exponents(ModelKind kind) { return kind == ModelKind::FiveParam || kind == ModelKind::SixParam; }

bool has_structure_function(ModelKind kind) { return kind != ModelKind::FiveParam; }

template <Scalar T>
OscillatorModel<T> make_model(const ModelSpec<T>& spec) {
  const T zero = from_int<T>(0);
  const ModelKind kind = spec.kind;
  if (uses_mu(kind) && spec.mu < zero) {
    fail(ErrorCode::NegativeMu, "mu must satisfy mu >= 0, got " + show(spec.mu));
  }
  if (uses_q(kind) && !(spec.q > zero)) {
    fail(ErrorCode::InvalidParameter, "q must be positive, got " + show(spec.q));
  }
  if (uses_p(kind) && !(spec.p > zero)) {
    fail(ErrorCode::InvalidParameter, "p must be positive, got " + show(spec.p));
  }
  if (kind == ModelKind::SixParam && !(spec.l == spec.alpha)) {
    fail(ErrorCode::SixParamMismatch,
         "six-parameter model requires l = alpha, got l=" + show(spec.l) + ", alpha=" + show(spec.alpha));
  }
  if (uses_exponents(kind)) {
    if (!(is_integral(spec.alpha) && is_integral(spec.beta) && is_integral(spec.l))) {
      fail(ErrorCode::NonIntegerExponentExact,
           "exact backend needs integer alpha, beta, l; use the float backend for real exponents");
    }
    if (is_zero(spec.l)) fail(ErrorCode::InvalidParameter, "l must be nonzero");
  }
  if constexpr (is_exact_v<T>) {
    if (kind == ModelKind::MixedMuPQChi) {
      fail(ErrorCode::NonIntegerExponentExact, "the chi variant evaluates [x]_{p,q} at non-integer x; float only");
    }
  }
  return OscillatorModel<T>(spec);
}

template <Scalar T>
T pq_bracket(const T& p, const T& q, std::int64_t n) {
  require_index(n, "pq_bracket");
  if (n == 0) return from_int<T>(0);
  if (coincide(p, q)) return from_int<T>(n) * ipow(q, n - 1);
  return (ipow(p, n) - ipow(q, n)) / (p - q);
}

double pq_bracket_real(double p, double q, double x) {
  if (x == 0.0) return 0.0;
  if (coincide(p, q)) return x * std::pow(q, x - 1.0);
  return (std::pow(p, x) - std::pow(q, x)) / (p - q);
}

template <Scalar T>
std::pair<T, T> ladder_eigenvalues(const OscillatorModel<T>& model, std::int64_t n) {
  require_index(n, "ladder_eigenvalues");
  if (model.kind() != ModelKind::FiveParam) {
    fail(ErrorCode::UnsupportedKind, "ladder eigenvalues are defined for the five-parameter model only");
  }
  const auto& s = model.spec();
  const T x = s.alpha * from_int<T>(n) + s.beta;
  return {five_param_bracket(s, x), five_param_bracket(s, x + s.l)};
}

template <Scalar T>
T structure_fn(const OscillatorModel<T>& model, std::int64_t n) {
  require_index(n, "structure_fn");
  const auto& s = model.spec();
  const T zero = from_int<T>(0);
  const T one = from_int<T>(1);
  if (n == 0) {
    if (model.kind() == ModelKind::FiveParam) {
      fail(ErrorCode::UnsupportedKind, "the five-parameter model exposes ladder eigenvalues, not a structure function");
    }
    return zero;
  }
  const T nn = from_int<T>(n);
  switch (model.kind()) {
    case ModelKind::AC:
      return ac_bracket(s.q, n);
    case ModelKind::BM:
      return bm_bracket(s.q, n);
    case ModelKind::TD:
      return nn * ipow(s.q, n - 1);
    case ModelKind::PQ:
      return pq_bracket(s.p, s.q, n);
    case ModelKind::Mu:
      return nn / (one + s.mu * nn);
    case ModelKind::MixedMuPQ:
      return pq_bracket(s.p, s.q, n) / (one + s.mu * nn);
    case ModelKind::MixedMuPQPsi: {
      const T b = pq_bracket(s.p, s.q, n);
      return b / (one + s.mu * b);
    }
    case ModelKind::MixedMuPQChi:
      if constexpr (is_exact_v<T>) {
        fail(ErrorCode::NonIntegerExponentExact, "the chi variant is float only");
      } else {
        return pq_bracket_real(s.p, s.q, nn / (one + s.mu * nn));
      }
    case ModelKind::SixParam:
      return five_param_bracket(s, s.alpha * nn + s.beta) / (one + s.mu * nn);
    case ModelKind::FiveParam:
      break;
  }
  fail(ErrorCode::UnsupportedKind, "the five-parameter model exposes ladder eigenvalues, not a structure function");
}

template <Scalar T>
T energy(const OscillatorModel<T>& model, std::int64_t n) {
  require_index(n, "energy");
  const T half = from_int<T>(1) / from_int<T>(2);
  if (model.kind() == ModelKind::FiveParam) {
    const auto [lower, raised] = ladder_eigenvalues(model, n);
    return half * (lower + raised);
  }
  return half * (structure_fn(model, n) + structure_fn(model, n + 1));
}

template <Scalar T>
bool has_mixed_bracket(const OscillatorModel<T>& model) {
  const auto k = model.kind();
  return k == ModelKind::Mu || k == ModelKind::MixedMuPQ || k == ModelKind::SixParam;
}

template <Scalar T>
T mixed_bracket(const OscillatorModel<T>& model, std::int64_t n) {
  require_index(n, "mixed_bracket");
  const auto& s = model.spec();
  switch (model.kind()) {
    case ModelKind::Mu:
      return from_int<T>(n);
    case ModelKind::MixedMuPQ:
      return pq_bracket(s.p, s.q, n);
    case ModelKind::SixParam:
      if (n == 0) return from_int<T>(0);
      return five_param_bracket(s, s.alpha * from_int<T>(n) + s.beta);
    default:
      fail(ErrorCode::UnsupportedKind, std::string("no mixed bracket for model ") + std::string(model_name(model.kind())));
  }
}

template <Scalar T>
BracketRecurrence<T> mixed_bracket_recurrence(const OscillatorModel<T>& model) {
  const auto& s = model.spec();
  switch (model.kind()) {
    case ModelKind::Mu:
      return {from_int<T>(2), from_int<T>(1)};
    case ModelKind::MixedMuPQ:
      return {s.p + s.q, s.p * s.q};
    case ModelKind::SixParam: {
      // b(n) is a combination of (q^α)ⁿ and (p^{-α})ⁿ.
      const T a = spow(s.q, s.alpha);
      const T b = spow(from_int<T>(1) / s.p, s.alpha);
      return {a + b, a * b};
    }
    default:
      fail(ErrorCode::UnsupportedKind, std::string("no mixed bracket for model ") + std::string(model_name(model.kind())));
  }
}

template <Scalar T>
EnergySequence<T> spectrum(const OscillatorModel<T>& model, std::int64_t n_max) {
  if (n_max < 3) {
    fail(ErrorCode::PreconditionViolated, "spectrum needs n_max >= 3, got " + std::to_string(n_max));
  }
  EnergySequence<T> seq{model, {}};
  seq.values.reserve(static_cast<std::size_t>(n_max + 1));
  for (std::int64_t n = 0; n <= n_max; ++n) seq.values.push_back(energy(model, n));
  return seq;
}

#define QFIB_INSTANTIATE_MODELS(T)                                                          \
  template OscillatorModel<T> make_model(const ModelSpec<T>&);                              \
  template T pq_bracket(const T&, const T&, std::int64_t);                                  \
  template std::pair<T, T> ladder_eigenvalues(const OscillatorModel<T>&, std::int64_t);     \
  template T structure_fn(const OscillatorModel<T>&, std::int64_t);                         \
  template T energy(const OscillatorModel<T>&, std::int64_t);                               \
  template bool has_mixed_bracket(const OscillatorModel<T>&);                               \
  template T mixed_bracket(const OscillatorModel<T>&, std::int64_t);                        \
  template BracketRecurrence<T> mixed_bracket_recurrence(const OscillatorModel<T>&);        \
  template EnergySequence<T> spectrum(const OscillatorModel<T>&, std::int64_t);

QFIB_INSTANTIATE_MODELS(Rational)
QFIB_INSTANTIATE_MODELS(double)

#undef QFIB_INSTANTIATE_MODELS

}  // namespace qfib
