#include <catch_amalgamated.hpp>

#include <map>

#include "qfib/closed_forms.hpp"
#include "qfib/quasifib.hpp"

using namespace qfib;

namespace {

std::map<std::string, AuditEntry<Rational>> audit_map(const Rational& mu) {
  std::map<std::string, AuditEntry<Rational>> out;
  for (auto& e : audit_closed_forms(mu, 15)) out.emplace(e.name, e);
  return out;
}

}  // namespace

TEST_CASE("closed-form spot values", "[closed_forms]") {
  const Rational one(1);
  CHECK(closed_form::splitting_lambda(one, 1) == Rational(4, 3));
  CHECK(closed_form::splitting_rho(one, 1) == Rational(-5, 18));
  CHECK(closed_form::substitution_lambda(one, 1) == Rational(3, 14));
  CHECK(closed_form::k_splitting(one, 1) == Rational(7, 6));
  CHECK(closed_form::k_lambda_two(one, 0) == Rational(1, 3));
  const auto row = closed_form::table_row(one, 0);
  CHECK(row.lambda == Rational(4, 3));
  CHECK(row.rho == Rational(0));
  CHECK(row.energy == Rational(1, 4));
  CHECK_THROWS_AS(closed_form::table_row(one, 6), std::out_of_range);
  CHECK(closed_form::harmonic_lambda(Rational(2)) == Rational(1));
}

TEST_CASE("closed forms that agree with the derivation", "[closed_forms][audit]") {
  for (const Rational mu : {Rational(1, 4), Rational(1, 2), Rational(1), Rational(7, 3)}) {
    const auto audit = audit_map(mu);
    for (const char* name : {"splitting_lambda", "splitting_rho", "substitution_lambda", "substitution_rho",
                             "k_splitting", "k_lambda_two", "cubic_rho", "table_lambda", "table_rho",
                             "table_energy"}) {
      INFO(name << " at mu = " << mu);
      CHECK(audit.at(name).agrees());
    }
  }
}

TEST_CASE("closed forms that disagree with the derivation are reported", "[closed_forms][audit]") {
  // These transcriptions do not reproduce the general solution; the audit must say so
  // rather than hide the discrepancy.
  for (const Rational mu : {Rational(1, 2), Rational(1)}) {
    const auto audit = audit_map(mu);
    for (const char* name : {"k_substitution", "k_rho_minus_one", "lambda_rho_minus_one", "rho_lambda_two",
                             "cubic_lambda"}) {
      INFO(name << " at mu = " << mu);
      const auto& entry = audit.at(name);
      CHECK(entry.checked > 0);
      REQUIRE(entry.first_mismatch.has_value());
      CHECK(entry.closed_value != entry.derived_value);
    }
  }
}

TEST_CASE("cubic gauge reproduces the printed rho", "[closed_forms]") {
  ModelSpec<Rational> s;
  s.kind = ModelKind::Mu;
  s.mu = Rational(2, 3);
  const auto m = make_model(s);
  const auto sol = qf_general(m, KGauge<Rational>::named(GaugeKind::Cubic), 14);
  for (const auto& t : sol.terms) CHECK(t.rho == closed_form::cubic_rho(s.mu, t.n));
}
