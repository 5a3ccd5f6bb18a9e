#include "report.hpp"

#include <cmath>
#include <stdexcept>

namespace qfib::cli {

namespace {

template <Scalar T>
Json encode_optional(const std::optional<T>& x) {
  return x ? encode(*x) : Json(nullptr);
}

Json encode_optional(const std::optional<bool>& x) { return x ? Json(*x) : Json(nullptr); }

template <Scalar T>
Json encode_fit(const FibonacciFit<T>& fit) {
  return {{"window_n", fit.window_n}, {"lambda", encode(fit.lambda)}, {"rho", encode(fit.rho)}};
}

template <Scalar T>
std::string optional_cell(const std::optional<T>& x) {
  return x ? csv_cell(*x) : std::string();
}

}  // namespace

Json encode(const Rational& x) {
  return {{"num", x.numerator().str()}, {"den", x.denominator().str()}};
}

Json encode(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Rational decode_rational(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_string() || !j["den"].is_string()) {
    throw std::invalid_argument("rational must be {\"num\": string, \"den\": string}");
  }
  return Rational::parse(j["num"].get<std::string>() + "/" + j["den"].get<std::string>());
}

std::string csv_cell(const Rational& x) { return x.to_string(); }
std::string csv_cell(double x) { return format_scalar(x); }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& table, bool with_header) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(cells[i]);
    }
    out << '\n';
  };
  if (with_header) line(table.header);
  for (const auto& row : table.rows) line(row);
}

template <Scalar T>
Json encode_model(const OscillatorModel<T>& model) {
  const auto& s = model.spec();
  Json params = Json::object();
  if (uses_q(s.kind)) params["q"] = encode(s.q);
  if (uses_p(s.kind)) params["p"] = encode(s.p);
  if (uses_mu(s.kind)) params["mu"] = encode(s.mu);
  if (uses_exponents(s.kind)) {
    params["alpha"] = encode(s.alpha);
    params["beta"] = encode(s.beta);
    params["l"] = encode(s.l);
  }
  return {{"kind", std::string(model_name(s.kind))},
          {"backend", std::string(backend_name(backend_of<T>))},
          {"params", std::move(params)}};
}

template <Scalar T>
Rendered render_spectrum(const EnergySequence<T>& energies) {
  Rendered r;
  Json values = Json::array();
  r.table.header = {"n", "energy"};
  for (std::int64_t n = 0; n <= energies.n_max(); ++n) {
    values.push_back(encode(energies[n]));
    r.table.rows.push_back({std::to_string(n), csv_cell(energies[n])});
  }
  r.payload = {{"type", "spectrum"}, {"n_max", energies.n_max()}, {"energies", std::move(values)}};
  return r;
}

template <Scalar T>
Rendered render_recurrence(const RecurrenceReport<T>& report, const std::optional<FibonacciConstants<T>>& closed) {
  Rendered r;
  r.table.header = {"key", "value"};
  auto kv = [&](std::string k, std::string v) { r.table.rows.push_back({std::move(k), std::move(v)}); };

  Json verdict;
  if (const auto* fib = std::get_if<verdict::Fibonacci<T>>(&report.verdict)) {
    verdict = {{"kind", "fibonacci"}, {"lambda", encode(fib->lambda)}, {"rho", encode(fib->rho)}};
    kv("verdict", "fibonacci");
    kv("lambda", csv_cell(fib->lambda));
    kv("rho", csv_cell(fib->rho));
  } else if (const auto* kb = std::get_if<verdict::KBonacci<T>>(&report.verdict)) {
    Json coeffs = Json::array();
    kv("verdict", "kbonacci");
    kv("k", std::to_string(kb->k));
    for (Eigen::Index i = 0; i < kb->coefficients.size(); ++i) {
      coeffs.push_back(encode(kb->coefficients(i)));
      kv("alpha" + std::to_string(i + 1), csv_cell(kb->coefficients(i)));
    }
    verdict = {{"kind", "kbonacci"}, {"k", kb->k}, {"coefficients", std::move(coeffs)}};
  } else {
    const auto& w = std::get<verdict::NonFibonacci<T>>(report.verdict);
    verdict = {{"kind", "non_fibonacci"}, {"witness", {{"first", encode_fit(w.first)}, {"second", encode_fit(w.second)}}}};
    kv("verdict", "non_fibonacci");
    kv("witness_first", std::to_string(w.first.window_n));
    kv("witness_second", std::to_string(w.second.window_n));
  }
  kv("minimal_order", report.minimal_order ? std::to_string(*report.minimal_order) : std::string());

  Json windows = Json::array();
  for (const auto& fit : report.per_window_fits) windows.push_back(encode_fit(fit));
  Json closed_json = nullptr;
  Json agrees = nullptr;
  if (closed) {
    closed_json = {{"lambda", encode(closed->lambda)}, {"rho", encode(closed->rho)}};
    if (const auto* fib = std::get_if<verdict::Fibonacci<T>>(&report.verdict)) {
      agrees = same_value(fib->lambda, closed->lambda, tolerance::kFitAgreement) &&
               same_value(fib->rho, closed->rho, tolerance::kFitAgreement);
    } else {
      agrees = false;
    }
  }
  r.payload = {{"type", "recurrence"},
               {"n_max", report.n_max},
               {"verdict", std::move(verdict)},
               {"minimal_order", report.minimal_order ? Json(*report.minimal_order) : Json(nullptr)},
               {"windows", std::move(windows)},
               {"degenerate_windows", report.degenerate_windows},
               {"closed_form", std::move(closed_json)},
               {"closed_form_agrees", std::move(agrees)}};
  return r;
}

template <Scalar T>
Rendered render_qf(const QFSolution<T>& solution, const QFCheck<T>& check) {
  Rendered r;
  r.table.header = {"n", "lambda", "rho", "residual"};
  Json terms = Json::array();
  for (const auto& t : solution.terms) {
    terms.push_back({{"n", t.n}, {"lambda", encode(t.lambda)}, {"rho", encode(t.rho)}, {"residual", encode_optional(t.residual)}});
    r.table.rows.push_back({std::to_string(t.n), csv_cell(t.lambda), csv_cell(t.rho), optional_cell(t.residual)});
  }
  Json gauge = nullptr;
  if (solution.gauge) {
    gauge = {{"kind", std::string(gauge_name(solution.gauge->kind))}};
    if (solution.gauge->kind == GaugeKind::Const) gauge["constant"] = encode(solution.gauge->constant);
  }
  r.payload = {{"type", "qf"},
               {"ansatz", std::string(ansatz_name(solution.ansatz))},
               {"initial_lambda", encode_optional(solution.initial_lambda)},
               {"gauge", std::move(gauge)},
               {"terms", std::move(terms)},
               {"closed_form_agrees", encode_optional(solution.closed_form_agrees)},
               {"recursion_agrees", encode_optional(solution.recursion_agrees)},
               {"check",
                {{"ok", check.ok()},
                 {"checked", check.checked},
                 {"violations", check.violations},
                 {"max_abs_residual", encode(check.max_abs_residual)}}}};
  return r;
}

template <Scalar T>
Rendered render_table1(const std::vector<Table1Row<T>>& rows) {
  Rendered r;
  r.table.header = {"n", "lambda", "rho", "energy"};
  Json out = Json::array();
  for (const auto& row : rows) {
    out.push_back({{"n", row.n},
                   {"lambda", encode(row.lambda)},
                   {"rho", encode(row.rho)},
                   {"energy", encode(row.energy)},
                   {"matches_closed_form", row.matches_closed_form}});
    r.table.rows.push_back({std::to_string(row.n), csv_cell(row.lambda), csv_cell(row.rho), csv_cell(row.energy)});
  }
  r.payload = {{"type", "table1"}, {"rows", std::move(out)}};
  return r;
}

template <Scalar T>
Rendered render_gauges(const std::vector<AuditEntry<T>>& audit, const std::vector<ConstraintRow<T>>& constraints,
                       std::int64_t n_max) {
  Rendered r;
  r.table.header = {"name", "checked", "agrees", "first_mismatch", "closed_value", "derived_value"};
  Json entries = Json::array();
  for (const auto& a : audit) {
    entries.push_back({{"name", a.name},
                       {"checked", a.checked},
                       {"agrees", a.agrees()},
                       {"first_mismatch", a.first_mismatch ? Json(*a.first_mismatch) : Json(nullptr)},
                       {"closed_value", encode_optional(a.closed_value)},
                       {"derived_value", encode_optional(a.derived_value)}});
    r.table.rows.push_back({a.name, std::to_string(a.checked), a.agrees() ? "true" : "false",
                            a.first_mismatch ? std::to_string(*a.first_mismatch) : std::string(),
                            optional_cell(a.closed_value), optional_cell(a.derived_value)});
  }
  Json rows = Json::array();
  for (const auto& c : constraints) {
    rows.push_back({{"constraint", c.constraint},
                    {"n", c.n},
                    {"k", encode(c.k)},
                    {"lambda", encode(c.lambda)},
                    {"rho", encode(c.rho)},
                    {"residual", encode(c.residual)}});
  }
  r.payload = {{"type", "gauges"}, {"n_max", n_max}, {"audit", std::move(entries)}, {"constraints", std::move(rows)}};
  return r;
}

#define QFIB_INSTANTIATE_REPORT(T)                                                                              \
  template Json encode_model(const OscillatorModel<T>&);                                                        \
  template Rendered render_spectrum(const EnergySequence<T>&);                                                  \
  template Rendered render_recurrence(const RecurrenceReport<T>&, const std::optional<FibonacciConstants<T>>&); \
  template Rendered render_qf(const QFSolution<T>&, const QFCheck<T>&);                                         \
  template Rendered render_table1(const std::vector<Table1Row<T>>&);                                            \
  template Rendered render_gauges(const std::vector<AuditEntry<T>>&, const std::vector<ConstraintRow<T>>&,      \
                                  std::int64_t);

QFIB_INSTANTIATE_REPORT(Rational)
QFIB_INSTANTIATE_REPORT(double)

#undef QFIB_INSTANTIATE_REPORT

}  // namespace qfib::cli
