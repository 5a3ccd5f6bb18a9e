#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qfib/quasifib.hpp"
#include "qfib/recurrence.hpp"

using namespace qfib;

namespace {

constexpr ModelKind kPhiKinds[] = {ModelKind::AC, ModelKind::BM, ModelKind::TD, ModelKind::PQ,
                                   ModelKind::Mu, ModelKind::MixedMuPQ, ModelKind::MixedMuPQPsi,
                                   ModelKind::SixParam};

ModelSpec<Rational> random_spec(oracle::Gen& gen, ModelKind kind) {
  ModelSpec<Rational> s;
  s.kind = kind;
  if (uses_q(kind)) s.q = gen.positive(5, 6);
  if (uses_p(kind)) s.p = gen.positive(5, 6);
  if (uses_mu(kind)) s.mu = gen.rational(0, 6, 4);
  if (uses_exponents(kind)) {
    s.alpha = Rational(gen.integer(1, 4));
    s.beta = Rational(gen.integer(1, 4));
    s.l = kind == ModelKind::SixParam ? s.alpha : Rational(gen.integer(1, 4));
  }
  return s;
}

ModelSpec<double> to_float(const ModelSpec<Rational>& s) {
  return {s.kind, s.q.to_double(), s.p.to_double(), s.mu.to_double(), s.alpha.to_double(), s.beta.to_double(),
          s.l.to_double()};
}

}  // namespace

TEST_CASE("energy differences follow from the structure function", "[property][models]") {
  oracle::Gen gen(101);
  for (const ModelKind kind : kPhiKinds) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto m = make_model(random_spec(gen, kind));
      for (std::int64_t n = 1; n <= 50; n += 7) {
        CHECK(energy(m, n) - energy(m, n - 1) == (structure_fn(m, n + 1) - structure_fn(m, n - 1)) / Rational(2));
      }
    }
  }
}

TEST_CASE("two-parameter reductions", "[property][models]") {
  oracle::Gen gen(102);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational q = gen.positive(4);
    auto make = [](ModelKind k, Rational q, Rational p) {
      ModelSpec<Rational> s;
      s.kind = k;
      s.q = q;
      s.p = p;
      return make_model(s);
    };
    for (std::int64_t n = 0; n <= 15; ++n) {
      CHECK(structure_fn(make(ModelKind::PQ, q, 1), n) == structure_fn(make(ModelKind::AC, q, 1), n));
      CHECK(structure_fn(make(ModelKind::PQ, q, q.reciprocal()), n) == structure_fn(make(ModelKind::BM, q, 1), n));
      CHECK(structure_fn(make(ModelKind::PQ, q, q), n) == structure_fn(make(ModelKind::TD, q, 1), n));
    }
  }
}

TEST_CASE("exact results are in lowest terms", "[property][models]") {
  oracle::Gen gen(103);
  for (const ModelKind kind : kPhiKinds) {
    const auto e = spectrum(make_model(random_spec(gen, kind)), 12);
    for (const auto& v : e.values) CHECK(boost::multiprecision::gcd(v.numerator(), v.denominator()) == 1);
  }
}

TEST_CASE("float spectra agree with exact", "[property][float]") {
  oracle::Gen gen(104);
  for (const ModelKind kind : kAllKinds) {
    if (kind == ModelKind::MixedMuPQChi) continue;
    for (int trial = 0; trial < 3; ++trial) {
      auto s = random_spec(gen, kind);
      // Keep deformations moderate so that both backends stay well conditioned to n = 30.
      if (uses_q(kind)) s.q = Rational(gen.integer(80, 125), 100);
      if (uses_p(kind)) s.p = Rational(gen.integer(80, 125), 100);
      const auto exact = spectrum(make_model(s), 30);
      const auto approx = spectrum(make_model(to_float(s)), 30);
      for (std::int64_t n = 0; n <= 30; ++n) CHECK(same_value(approx[n], exact[n].to_double(), 1e-12));
    }
  }
}

TEST_CASE("classification matches closed-form constants", "[property][recurrence]") {
  oracle::Gen gen(105);
  for (const ModelKind kind : {ModelKind::AC, ModelKind::BM, ModelKind::TD, ModelKind::PQ, ModelKind::FiveParam}) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto m = make_model(random_spec(gen, kind));
      const auto closed = closed_form_fibonacci(m);
      REQUIRE(closed.has_value());
      const auto e = spectrum(m, 20);
      const auto report = classify_fibonacci(e);
      if (!report.is_fibonacci()) {
        // Only possible when every window but one is degenerate, which these parameters avoid.
        FAIL("expected Fibonacci for " << model_name(kind));
      }
      const auto& fib = std::get<verdict::Fibonacci<Rational>>(report.verdict);
      CHECK(fib.lambda == closed->lambda);
      CHECK(fib.rho == closed->rho);
      for (std::int64_t n = 1; n <= 19; ++n) CHECK(oracle::residual(e.values, n, fib.lambda, fib.rho).is_zero());
    }
  }
}

TEST_CASE("five-parameter constants do not depend on beta or l", "[property][recurrence]") {
  oracle::Gen gen(106);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_spec(gen, ModelKind::FiveParam);
    const auto reference = classify_fibonacci(spectrum(make_model(s), 10));
    for (int variant = 0; variant < 3; ++variant) {
      s.beta = Rational(gen.integer(1, 4));
      s.l = Rational(gen.integer(1, 4));
      const auto other = classify_fibonacci(spectrum(make_model(s), 10));
      const auto& a = std::get<verdict::Fibonacci<Rational>>(reference.verdict);
      const auto& b = std::get<verdict::Fibonacci<Rational>>(other.verdict);
      CHECK(a.lambda == b.lambda);
      CHECK(a.rho == b.rho);
    }
  }
}

TEST_CASE("non-Fibonacci witnesses re-verify", "[property][recurrence]") {
  oracle::Gen gen(107);
  for (const ModelKind kind : {ModelKind::Mu, ModelKind::MixedMuPQ, ModelKind::MixedMuPQPsi}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto s = random_spec(gen, kind);
      s.mu = gen.positive(3, 5);
      const auto e = spectrum(make_model(s), 14);
      const auto report = classify_fibonacci(e);
      const auto* w = report.witness();
      REQUIRE(w != nullptr);
      const auto first = fit_fibonacci_window(e, w->first.window_n);
      const auto second = fit_fibonacci_window(e, w->second.window_n);
      CHECK(first.lambda == w->first.lambda);
      CHECK(first.rho == w->first.rho);
      CHECK(second.lambda == w->second.lambda);
      CHECK(second.rho == w->second.rho);
      CHECK((first.lambda != second.lambda || first.rho != second.rho));
    }
  }
}

TEST_CASE("k-bonacci order is monotone", "[property][recurrence]") {
  oracle::Gen gen(108);
  for (const ModelKind kind : kPhiKinds) {
    const auto e = spectrum(make_model(random_spec(gen, kind)), 14);
    bool seen_fit = false;
    for (int k = 2; k <= 6; ++k) {
      const bool fits = fit_kbonacci(e, k).status != KFitStatus::Inconsistent;
      if (seen_fit) CHECK(fits);
      seen_fit = seen_fit || fits;
    }
  }
}

TEST_CASE("every gauge reproduces the same spectrum", "[property][quasifib]") {
  oracle::Gen gen(109);
  for (int trial = 0; trial < 6; ++trial) {
    const Rational mu = gen.rational(1, 12, 4);
    ModelSpec<Rational> s;
    s.kind = ModelKind::Mu;
    s.mu = mu;
    const auto m = make_model(s);
    const auto e = spectrum(m, 14);
    std::vector<KGauge<Rational>> gauges{KGauge<Rational>::constant_gauge(gen.rational(-4, 4, 3))};
    for (const GaugeKind k :
         {GaugeKind::K1, GaugeKind::K2, GaugeKind::RhoNegOne, GaugeKind::LambdaTwo, GaugeKind::Cubic}) {
      gauges.push_back(KGauge<Rational>::named(k));
    }
    for (const auto& g : gauges) {
      const auto sol = qf_general(m, g, 14);
      // Rebuild the spectrum from E₀, E₁ and the coefficients alone.
      std::vector<Rational> rebuilt{e[0], e[1]};
      for (std::int64_t n = 1; n <= 13; ++n) {
        const auto* t = sol.find(n);
        REQUIRE(t != nullptr);
        rebuilt.push_back(t->lambda * rebuilt[static_cast<std::size_t>(n)] +
                          t->rho * rebuilt[static_cast<std::size_t>(n - 1)]);
      }
      CHECK(rebuilt == e.values);
    }
  }
}

TEST_CASE("named gauges equal the direct ansatze for random mu", "[property][quasifib]") {
  oracle::Gen gen(110);
  for (int trial = 0; trial < 8; ++trial) {
    ModelSpec<Rational> s;
    s.kind = ModelKind::Mu;
    s.mu = gen.rational(0, 12, 4);
    const auto m = make_model(s);
    const auto split = qf_splitting(m, 21);
    const auto k1 = qf_general(m, KGauge<Rational>::named(GaugeKind::K1), 21);
    for (const auto& t : split.terms) {
      CHECK(k1.find(t.n)->lambda == t.lambda);
      CHECK(k1.find(t.n)->rho == t.rho);
    }
    const auto sub = qf_substitution(spectrum(m, 21), std::nullopt, 21);
    const auto k2 = qf_general(m, KGauge<Rational>::named(GaugeKind::K2), 21);
    for (const auto& t : sub.terms) {
      CHECK(k2.find(t.n)->lambda == t.lambda);
      CHECK(k2.find(t.n)->rho == t.rho);
    }
  }
}

TEST_CASE("constant-gauge lambda is linear over linear in n", "[property][quasifib]") {
  oracle::Gen gen(111);
  for (int trial = 0; trial < 6; ++trial) {
    ModelSpec<Rational> s;
    s.kind = ModelKind::Mu;
    s.mu = gen.rational(1, 12, 4);
    const auto sol = qf_general(make_model(s), KGauge<Rational>::constant_gauge(1), 20);
    // (a + b n) - λₙ (c + d n) = 0 has a nonzero solution iff every 4x4 minor of the rows
    // [1, n, -λₙ, -nλₙ] vanishes; a constant λ would already satisfy [1, -λₙ].
    std::vector<std::vector<Rational>> rows;
    for (const auto& t : sol.terms) {
      const Rational n(t.n);
      rows.push_back({1, n, -t.lambda, -n * t.lambda});
    }
    for (std::size_t i = 0; i + 3 < rows.size(); ++i) {
      CHECK(oracle::determinant({rows[i], rows[i + 1], rows[i + 2], rows[i + 3]}).is_zero());
    }
    CHECK(oracle::determinant({rows[0], rows[rows.size() / 2], rows.back(), rows[rows.size() / 3]}).is_zero());
    CHECK_FALSE(oracle::determinant({{1, -sol.terms[0].lambda}, {1, -sol.terms[1].lambda}}).is_zero());
  }
}

TEST_CASE("substitution recursion and alternating sum agree", "[property][quasifib]") {
  oracle::Gen gen(112);
  for (int trial = 0; trial < 8; ++trial) {
    const auto s = random_spec(gen, trial % 2 ? ModelKind::Mu : ModelKind::MixedMuPQ);
    const auto e = spectrum(make_model(s), 20);
    CHECK(qf_substitution(e, std::nullopt, 20).recursion_agrees == true);
    CHECK(qf_substitution(e, Rational(0), 20).recursion_agrees == true);
  }
}
