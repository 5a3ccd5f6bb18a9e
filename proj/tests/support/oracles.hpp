#pragma once

// Reference computations written independently of the library: explicit sums and direct
// definitions instead of the closed-form brackets and eliminations the library uses.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qfib/rational.hpp"

namespace oracle {

using qfib::Rational;

struct Params {
  Rational q{1};
  Rational p{1};
  Rational mu{0};
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  std::int64_t l = 1;
};

/// [n]_{p,q} = Σ_{k=0}^{n-1} p^k q^{n-1-k}.
Rational pq_sum(const Rational& p, const Rational& q, std::int64_t n);

Rational phi_ac(const Rational& q, std::int64_t n);  // Σ q^k
Rational phi_bm(const Rational& q, std::int64_t n);  // Σ q^{n-1-2k}
Rational phi_td(const Rational& q, std::int64_t n);
Rational phi_mu(const Rational& mu, std::int64_t n);
Rational phi_mixed(const Params& s, std::int64_t n);
Rational phi_psi(const Params& s, std::int64_t n);
/// (a^x - b^x)/(a^l - b^l) with a = q, b = 1/p, x = αn+β; evaluated as a sum when l | x.
Rational five_bracket(const Params& s, std::int64_t x);
Rational phi_six(const Params& s, std::int64_t n);

/// Eₙ from a structure function.
template <class Phi>
std::vector<Rational> energies(Phi&& phi, std::int64_t n_max) {
  std::vector<Rational> e;
  for (std::int64_t n = 0; n <= n_max; ++n) e.push_back((phi(n) + phi(n + 1)) / Rational(2));
  return e;
}

std::vector<Rational> five_param_energies(const Params& s, std::int64_t n_max);

/// Cramer's rule on one 2x2 window; nullopt when singular.
std::optional<std::pair<Rational, Rational>> cramer_window(const std::vector<Rational>& e, std::int64_t n);

/// Determinant by cofactor-free row reduction over plain rationals.
Rational determinant(std::vector<std::vector<Rational>> m);

/// True when some (k+1)x(k+1) block of consecutive rows of [A | b] for the k-term relation
/// is nonsingular, i.e. no constant k-term relation exists.
bool kbonacci_impossible(const std::vector<Rational>& e, int k);

/// E_{n+1} - λEₙ - ρE_{n-1}.
Rational residual(const std::vector<Rational>& e, std::int64_t n, const Rational& lambda, const Rational& rho);

/// Seeded generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  /// a/b with a in [num_lo, num_hi], b in [1, den_hi].
  Rational rational(std::int64_t num_lo, std::int64_t num_hi, std::int64_t den_hi);
  /// Positive rational in (0, hi].
  Rational positive(std::int64_t hi, std::int64_t den_hi = 9);
  double real(double lo, double hi);

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
