#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

Rational pq_sum(const Rational& p, const Rational& q, std::int64_t n) {
  Rational acc{0};
  for (std::int64_t k = 0; k < n; ++k) acc += p.pow(k) * q.pow(n - 1 - k);
  return acc;
}

Rational phi_ac(const Rational& q, std::int64_t n) {
  Rational acc{0};
  for (std::int64_t k = 0; k < n; ++k) acc += q.pow(k);
  return acc;
}

Rational phi_bm(const Rational& q, std::int64_t n) {
  Rational acc{0};
  for (std::int64_t k = 0; k < n; ++k) acc += q.pow(n - 1 - 2 * k);
  return acc;
}

Rational phi_td(const Rational& q, std::int64_t n) {
  if (n == 0) return Rational(0);
  return Rational(n) * q.pow(n - 1);
}

Rational phi_mu(const Rational& mu, std::int64_t n) { return Rational(n) / (Rational(1) + mu * Rational(n)); }

Rational phi_mixed(const Params& s, std::int64_t n) {
  return pq_sum(s.p, s.q, n) / (Rational(1) + s.mu * Rational(n));
}

Rational phi_psi(const Params& s, std::int64_t n) {
  const Rational b = pq_sum(s.p, s.q, n);
  return b / (Rational(1) + s.mu * b);
}

Rational five_bracket(const Params& s, std::int64_t x) {
  const Rational a = s.q;
  const Rational b = s.p.reciprocal();
  if (x % s.l == 0 && x >= 0) {
    // (a^{lm} - b^{lm})/(a^l - b^l) = Σ_{j<m} (a^l)^j (b^l)^{m-1-j}
    return pq_sum(a.pow(s.l), b.pow(s.l), x / s.l);
  }
  if (a == b) return Rational(x, s.l) * a.pow(x - s.l);
  return (a.pow(x) - b.pow(x)) / (a.pow(s.l) - b.pow(s.l));
}

Rational phi_six(const Params& s, std::int64_t n) {
  if (n == 0) return Rational(0);
  return five_bracket(s, s.alpha * n + s.beta) / (Rational(1) + s.mu * Rational(n));
}

std::vector<Rational> five_param_energies(const Params& s, std::int64_t n_max) {
  std::vector<Rational> e;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const std::int64_t x = s.alpha * n + s.beta;
    e.push_back((five_bracket(s, x) + five_bracket(s, x + s.l)) / Rational(2));
  }
  return e;
}

std::optional<std::pair<Rational, Rational>> cramer_window(const std::vector<Rational>& e, std::int64_t n) {
  const auto i = static_cast<std::size_t>(n);
  // [E_n  E_{n-1}; E_{n+1} E_n] (λ, ρ) = (E_{n+1}, E_{n+2})
  const Rational det = e[i] * e[i] - e[i - 1] * e[i + 1];
  if (det.is_zero()) return std::nullopt;
  const Rational lambda = (e[i + 1] * e[i] - e[i - 1] * e[i + 2]) / det;
  const Rational rho = (e[i] * e[i + 2] - e[i + 1] * e[i + 1]) / det;
  return std::pair{lambda, rho};
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t size = m.size();
  Rational det{1};
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t pivot = c;
    while (pivot < size && m[pivot][c].is_zero()) ++pivot;
    if (pivot == size) return Rational(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < size; ++r) {
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < size; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

bool kbonacci_impossible(const std::vector<Rational>& e, int k) {
  const auto n_max = static_cast<std::int64_t>(e.size()) - 1;
  for (std::int64_t start = k; start + k <= n_max; ++start) {
    std::vector<std::vector<Rational>> block;
    for (std::int64_t n = start; n <= start + k; ++n) {
      std::vector<Rational> row;
      for (int i = 1; i <= k; ++i) row.push_back(e[static_cast<std::size_t>(n - i)]);
      row.push_back(e[static_cast<std::size_t>(n)]);
      block.push_back(std::move(row));
    }
    if (!determinant(std::move(block)).is_zero()) return true;
  }
  return false;
}

Rational residual(const std::vector<Rational>& e, std::int64_t n, const Rational& lambda, const Rational& rho) {
  const auto i = static_cast<std::size_t>(n);
  return e[i + 1] - lambda * e[i] - rho * e[i - 1];
}

std::int64_t Gen::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

Rational Gen::rational(std::int64_t num_lo, std::int64_t num_hi, std::int64_t den_hi) {
  return Rational(integer(num_lo, num_hi), integer(1, den_hi));
}

Rational Gen::positive(std::int64_t hi, std::int64_t den_hi) {
  const std::int64_t den = integer(1, den_hi);
  return Rational(integer(1, hi * den), den);
}

double Gen::real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

}  // namespace oracle
