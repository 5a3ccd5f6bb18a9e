#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qfib/error.hpp"
#include "qfib/scalar.hpp"

namespace qfib {

/// The oscillator catalog.
enum class ModelKind {
  AC,            // Arik-Coon, φ(n) = (qⁿ-1)/(q-1)
  BM,            // Biedenharn-Macfarlane, φ(n) = (qⁿ-q⁻ⁿ)/(q-q⁻¹)
  TD,            // Tamm-Dancoff, φ(n) = n qⁿ⁻¹
  PQ,            // two-parameter, φ(n) = [n]_{p,q}
  FiveParam,     // (p,q,α,β,l); energies only
  Mu,            // φ(n) = n/(1+μn)
  MixedMuPQ,     // [n]_{p,q}/(1+μn)
  MixedMuPQPsi,  // [n]_{p,q}/(1+μ[n]_{p,q})
  MixedMuPQChi,  // [n/(1+μn)]_{p,q}, Float only
  SixParam,      // five-parameter bracket (l = α) over 1+μn
};

inline constexpr ModelKind kAllKinds[] = {
    ModelKind::AC,        ModelKind::BM,        ModelKind::TD,           ModelKind::PQ,
    ModelKind::FiveParam, ModelKind::Mu,        ModelKind::MixedMuPQ,    ModelKind::MixedMuPQPsi,
    ModelKind::MixedMuPQChi, ModelKind::SixParam,
};

/// Flag spelling: ac, bm, td, pq, fiveparam, mu, mixed, mixed-psi, mixed-chi, sixparam.
std::string_view model_name(ModelKind kind);
std::optional<ModelKind> parse_model_name(std::string_view name);

bool uses_q(ModelKind kind);
bool uses_p(ModelKind kind);
bool uses_mu(ModelKind kind);
bool uses_exponents(ModelKind kind);
bool has_structure_function(ModelKind kind);

template <Scalar T>
struct ModelSpec {
  ModelKind kind = ModelKind::Mu;
  T q = from_int<T>(1);
  T p = from_int<T>(1);
  T mu = from_int<T>(0);
  T alpha = from_int<T>(1);
  T beta = from_int<T>(0);
  T l = from_int<T>(1);
};

/// A catalog entry whose parameters passed validation. Only make_model builds one.
template <Scalar T>
class OscillatorModel {
 public:
  using scalar_type = T;

  const ModelSpec<T>& spec() const { return spec_; }
  ModelKind kind() const { return spec_.kind; }
  static constexpr Backend backend() { return backend_of<T>; }

 private:
  explicit OscillatorModel(ModelSpec<T> spec) : spec_(std::move(spec)) {}
  template <Scalar U>
  friend OscillatorModel<U> make_model(const ModelSpec<U>& spec);

  ModelSpec<T> spec_;
};

/// Validates `spec` and returns the model.
///
/// Errors: NegativeMu, NonIntegerExponentExact (exponent parameters that are not
/// integers, or the χ variant, under the exact backend), SixParamMismatch (l ≠ α),
/// InvalidParameter (p or q not positive, l = 0).
template <Scalar T>
OscillatorModel<T> make_model(const ModelSpec<T>& spec);

/// [n]_{p,q} = (pⁿ - qⁿ)/(p - q), or n qⁿ⁻¹ when p and q coincide.
template <Scalar T>
T pq_bracket(const T& p, const T& q, std::int64_t n);

/// [x]_{p,q} at real argument.
double pq_bracket_real(double p, double q, double x);

/// φ(n). φ(0) = 0 for every kind. UnsupportedKind for FiveParam.
template <Scalar T>
T structure_fn(const OscillatorModel<T>& model, std::int64_t n);

/// Eigenvalues (a†a, aa†) on |n⟩ for the five-parameter family.
template <Scalar T>
std::pair<T, T> ladder_eigenvalues(const OscillatorModel<T>& model, std::int64_t n);

/// Eₙ = (φ(n) + φ(n+1))/2, or half the ladder-eigenvalue sum for FiveParam.
template <Scalar T>
T energy(const OscillatorModel<T>& model, std::int64_t n);

/// Bracket b with φ(n) = b(n)/(1+μn) and b(n+2) = trace·b(n+1) - det·b(n) for n ≥ 1.
///
/// Defined for Mu (b(n) = n), MixedMuPQ and SixParam; these are the families with a
/// closed general quasi-Fibonacci solution.
template <Scalar T>
struct BracketRecurrence {
  T trace;
  T det;
};

template <Scalar T>
bool has_mixed_bracket(const OscillatorModel<T>& model);
template <Scalar T>
T mixed_bracket(const OscillatorModel<T>& model, std::int64_t n);
template <Scalar T>
BracketRecurrence<T> mixed_bracket_recurrence(const OscillatorModel<T>& model);

/// E₀..E_{n_max} of one model.
template <Scalar T>
struct EnergySequence {
  OscillatorModel<T> model;
  std::vector<T> values;

  std::int64_t n_max() const { return static_cast<std::int64_t>(values.size()) - 1; }
  const T& operator[](std::int64_t n) const { return values.at(static_cast<std::size_t>(n)); }
  std::span<const T> view() const { return values; }
};

/// Precondition: n_max ≥ 3.
template <Scalar T>
EnergySequence<T> spectrum(const OscillatorModel<T>& model, std::int64_t n_max);

}  // namespace qfib
