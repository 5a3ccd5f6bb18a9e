#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "report.hpp"

namespace qfib::cli {

namespace {

constexpr std::int64_t kMaxGridPoints = 10'000;
constexpr const char* kParamNames[] = {"q", "p", "mu", "alpha", "beta", "l"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric flag value as typed. Decimal spelling selects the Float backend.
struct Literal {
  std::string text;
  bool decimal = false;

  static Literal of(std::string t) {
    const bool dec = t.find_first_of(".eE") != std::string::npos || t.find("inf") != std::string::npos ||
                     t.find("nan") != std::string::npos;
    return {std::move(t), dec};
  }
};

struct Options {
  std::string subcommand;
  std::vector<std::string> argv;
  std::string model;
  std::map<std::string, Literal> params;
  std::string backend = "auto";
  std::int64_t n_max = 12;
  int k_max = 6;
  std::string format;
  std::string out_path;
  std::string ansatz = "general";
  std::optional<Literal> c;
  std::string gauge = "const";
  Literal k_const = Literal::of("1");
  std::map<std::int64_t, Literal> gauge_table;
  std::vector<std::string> grid;
  std::string sweep_command = "classify";
  bool merge = false;
};

Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError("not a rational literal: '" + text + "'");
  }
}

double parse_real(const Literal& lit) {
  if (!lit.decimal) return parse_rational(lit.text).to_double();
  double v = 0.0;
  const char* first = lit.text.data();
  const char* last = first + lit.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw UsageError("not a number: '" + lit.text + "'");
  return v;
}

template <Scalar T>
T value_of(const Literal& lit) {
  if constexpr (is_exact_v<T>) {
    return parse_rational(lit.text);
  } else {
    return parse_real(lit);
  }
}

ModelKind resolve_kind(const Options& o) {
  const bool mu_only = o.subcommand == "table1" || o.subcommand == "gauges";
  if (o.model.empty()) {
    if (mu_only) return ModelKind::Mu;
    throw UsageError("--model is required for " + o.subcommand);
  }
  const auto kind = parse_model_name(o.model);
  if (!kind) throw UsageError("unknown model '" + o.model + "'");
  if (mu_only && *kind != ModelKind::Mu) throw UsageError(o.subcommand + " is defined for --model mu only");
  return *kind;
}

bool param_applies(ModelKind kind, const std::string& name) {
  if (name == "q") return uses_q(kind);
  if (name == "p") return uses_p(kind);
  if (name == "mu") return uses_mu(kind);
  return uses_exponents(kind);
}

Backend resolve_backend(const Options& o, ModelKind kind) {
  bool decimal = false;
  for (const auto& [name, lit] : o.params) decimal = decimal || lit.decimal;
  if (o.subcommand == "qf") {
    if (o.c) decimal = decimal || o.c->decimal;
    decimal = decimal || o.k_const.decimal;
    for (const auto& [n, lit] : o.gauge_table) decimal = decimal || lit.decimal;
  }
  if (o.backend == "exact") {
    if (decimal) throw UsageError("decimal input cannot be used with --backend exact");
    return Backend::Exact;
  }
  if (o.backend == "float") return Backend::Float;
  return decimal || kind == ModelKind::MixedMuPQChi ? Backend::Float : Backend::Exact;
}

template <Scalar T>
OscillatorModel<T> build_model(const Options& o, ModelKind kind) {
  ModelSpec<T> spec;
  spec.kind = kind;
  const std::map<std::string, T*> slots{{"q", &spec.q},         {"p", &spec.p},       {"mu", &spec.mu},
                                        {"alpha", &spec.alpha}, {"beta", &spec.beta}, {"l", &spec.l}};
  for (const auto& [name, lit] : o.params) {
    if (!param_applies(kind, name)) {
      throw UsageError("--" + name + " does not apply to model " + std::string(model_name(kind)));
    }
    *slots.at(name) = value_of<T>(lit);
  }
  if (kind == ModelKind::SixParam && !o.params.contains("l")) spec.l = spec.alpha;
  return make_model(spec);
}

template <Scalar T>
KGauge<T> build_gauge(const Options& o) {
  const auto kind = parse_gauge_name(o.gauge);
  if (!kind) throw UsageError("unknown gauge '" + o.gauge + "'");
  switch (*kind) {
    case GaugeKind::Const:
      return KGauge<T>::constant_gauge(value_of<T>(o.k_const));
    case GaugeKind::Custom: {
      if (o.gauge_table.empty()) throw UsageError("--gauge custom needs a non-empty --gauge-table");
      std::map<std::int64_t, T> table;
      for (const auto& [n, lit] : o.gauge_table) table.emplace(n, value_of<T>(lit));
      return KGauge<T>::tabulated(std::move(table));
    }
    default:
      return KGauge<T>::named(*kind);
  }
}

template <Scalar T>
Rendered execute_qf(const Options& o, const OscillatorModel<T>& model) {
  const auto energies = spectrum(model, o.n_max);
  std::optional<QFSolution<T>> sol;
  if (o.ansatz == "splitting") {
    sol = qf_splitting(model, o.n_max);
  } else if (o.ansatz == "substitution") {
    std::optional<T> c;
    if (o.c) c = value_of<T>(*o.c);
    sol = qf_substitution(energies, c, o.n_max);
  } else if (o.ansatz == "general") {
    sol = qf_general(model, build_gauge<T>(o), o.n_max);
  } else {
    throw UsageError("unknown ansatz '" + o.ansatz + "'");
  }
  return render_qf(*sol, verify_qf(energies, *sol));
}

template <Scalar T>
Rendered execute_gauges(const Options& o, const OscillatorModel<T>& model) {
  const auto energies = spectrum(model, o.n_max);
  std::vector<ConstraintRow<T>> rows;
  const std::pair<const char*, GaugeConstraint<T>> constraints[] = {
      {"rho=-1", GaugeConstraint<T>::rho_equals(from_int<T>(-1))},
      {"lambda=2", GaugeConstraint<T>::lambda_equals(from_int<T>(2))},
  };
  for (const auto& [label, constraint] : constraints) {
    for (std::int64_t n = 1; n <= o.n_max - 1; ++n) {
      try {
        const auto g = gauge_for_constraint(model, constraint, n);
        const bool rho_fixed = constraint.kind == GaugeConstraint<T>::Kind::RhoEquals;
        const T lambda = rho_fixed ? g.other : constraint.value;
        const T rho = rho_fixed ? constraint.value : g.other;
        rows.push_back({label, n, g.k, lambda, rho, energies[n + 1] - lambda * energies[n] - rho * energies[n - 1]});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsolvableConstraint) throw;
      }
    }
  }
  return render_gauges(audit_closed_forms(model.spec().mu, o.n_max), rows, o.n_max);
}

template <Scalar T>
std::pair<Json, Rendered> execute(const Options& o, ModelKind kind) {
  const auto model = build_model<T>(o, kind);
  Json model_json = encode_model(model);
  const std::string& cmd = o.subcommand;
  if (cmd == "spectrum") return {model_json, render_spectrum(spectrum(model, o.n_max))};
  if (cmd == "classify") {
    const auto energies = spectrum(model, o.n_max);
    return {model_json, render_recurrence(classify(energies, o.k_max), closed_form_fibonacci(model))};
  }
  if (cmd == "qf") return {model_json, execute_qf(o, model)};
  if (cmd == "table1") return {model_json, render_table1(table1(model.spec().mu))};
  if (cmd == "gauges") return {model_json, execute_gauges(o, model)};
  throw UsageError("unknown command '" + cmd + "'");
}

Json command_echo(const Options& o) { return {{"subcommand", o.subcommand}, {"argv", o.argv}}; }

struct Outcome {
  Json report;
  Table table;
  bool failed = false;
};

Outcome error_outcome(const Options& o, std::string_view name, const std::string& message) {
  Outcome out;
  out.failed = true;
  out.report = {{"schema_version", kSchemaVersion},
                {"command", command_echo(o)},
                {"status", "error"},
                {"model", nullptr},
                {"exact", false},
                {"error", {{"name", std::string(name)}, {"message", message}}}};
  out.table = {{"error", "message"}, {{std::string(name), message}}};
  return out;
}

/// One report. Usage errors propagate; domain errors become error reports.
Outcome run_single(const Options& o) {
  try {
    const ModelKind kind = resolve_kind(o);
    const Backend backend = resolve_backend(o, kind);
    auto [model_json, rendered] =
        backend == Backend::Exact ? execute<Rational>(o, kind) : execute<double>(o, kind);
    Outcome out;
    out.report = {{"schema_version", kSchemaVersion},
                  {"command", command_echo(o)},
                  {"status", "ok"},
                  {"model", std::move(model_json)},
                  {"exact", backend == Backend::Exact},
                  {"payload", std::move(rendered.payload)}};
    out.table = std::move(rendered.table);
    return out;
  } catch (const Error& e) {
    return error_outcome(o, e.name(), e.what());
  } catch (const std::domain_error& e) {
    return error_outcome(o, "DomainError", e.what());
  }
}

struct Axis {
  std::string name;
  std::vector<Literal> values;
};

Axis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw UsageError("--grid expects name=values, got '" + spec + "'");
  Axis axis{spec.substr(0, eq), {}};
  if (std::find(std::begin(kParamNames), std::end(kParamNames), axis.name) == std::end(kParamNames)) {
    throw UsageError("unknown grid parameter '" + axis.name + "'");
  }
  const std::string body = spec.substr(eq + 1);
  if (body.empty()) return axis;

  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(body);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("range must be start:stop:step, got '" + body + "'");
    const Literal a = Literal::of(parts[0]), b = Literal::of(parts[1]), step = Literal::of(parts[2]);
    if (a.decimal || b.decimal || step.decimal) {
      const double lo = parse_real(a), hi = parse_real(b), h = parse_real(step);
      if (!(h > 0.0)) throw UsageError("range step must be positive");
      const double span = std::floor((hi - lo) / h + 1e-9);
      if (span < 0) return axis;
      if (span >= static_cast<double>(kMaxGridPoints)) fail(ErrorCode::GridTooLarge, "grid exceeds 10^4 points");
      for (std::int64_t i = 0; i <= static_cast<std::int64_t>(span); ++i) {
        axis.values.push_back({format_scalar(lo + static_cast<double>(i) * h), true});
      }
      return axis;
    }
    const Rational lo = parse_rational(a.text), hi = parse_rational(b.text), h = parse_rational(step.text);
    if (h.sign() <= 0) throw UsageError("range step must be positive");
    if (hi < lo) return axis;
    const Rational span = (hi - lo) / h;
    const BigInt count = span.numerator() / span.denominator() + 1;
    if (count > kMaxGridPoints) fail(ErrorCode::GridTooLarge, "grid exceeds 10^4 points");
    Rational v = lo;
    for (BigInt i = 0; i < count; ++i, v += h) axis.values.push_back({v.to_string(), false});
    return axis;
  }
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) throw UsageError("empty value in grid list '" + body + "'");
    axis.values.push_back(Literal::of(item));
  }
  return axis;
}

struct SweepResult {
  std::vector<Outcome> points;
  std::vector<std::vector<std::string>> coordinates;
  std::vector<std::string> axis_names;
};

SweepResult run_sweep(const Options& o) {
  if (o.sweep_command == "sweep") throw UsageError("sweep cannot run sweep");
  std::vector<Axis> axes;
  for (const auto& g : o.grid) axes.push_back(parse_axis(g));
  SweepResult result;
  for (const auto& a : axes) result.axis_names.push_back(a.name);

  std::int64_t total = axes.empty() ? 0 : 1;
  for (const auto& a : axes) {
    total *= static_cast<std::int64_t>(a.values.size());
    if (total > kMaxGridPoints) fail(ErrorCode::GridTooLarge, "grid exceeds 10^4 points");
  }

  Options point = o;
  point.subcommand = o.sweep_command;
  std::vector<std::size_t> index(axes.size(), 0);
  for (std::int64_t i = 0; i < total; ++i) {
    std::vector<std::string> coords;
    Json grid_point = Json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const Literal& lit = axes[a].values[index[a]];
      point.params[axes[a].name] = lit;
      grid_point[axes[a].name] = lit.text;
      coords.push_back(lit.text);
    }
    Outcome outcome = run_single(point);
    outcome.report["grid_point"] = std::move(grid_point);
    result.points.push_back(std::move(outcome));
    result.coordinates.push_back(std::move(coords));
    // Last axis varies fastest.
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++index[a] < axes[a].values.size()) break;
      index[a] = 0;
    }
  }
  return result;
}

std::string resolve_format(const Options& o) {
  std::string format = o.format;
  if (format.empty()) {
    const char* env = std::getenv("OSC_DEFAULT_FORMAT");
    format = env && *env ? env : "json";
  }
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv, got '" + format + "'");
  return format;
}

void emit_single(std::ostream& out, const Outcome& outcome, const std::string& format) {
  if (format == "json") {
    out << outcome.report.dump(2) << '\n';
  } else {
    write_csv(out, outcome.table);
  }
}

void emit_sweep(std::ostream& out, const SweepResult& sweep, const std::string& format, bool merge) {
  if (format == "json") {
    if (merge) {
      Json all = Json::array();
      for (const auto& p : sweep.points) all.push_back(p.report);
      out << all.dump(2) << '\n';
    } else {
      for (const auto& p : sweep.points) out << p.report.dump() << '\n';
    }
    return;
  }
  Table merged;
  merged.header = sweep.axis_names;
  const Outcome* first_ok = nullptr;
  for (const auto& p : sweep.points) {
    if (!p.failed) {
      first_ok = &p;
      break;
    }
  }
  const Table& shape = first_ok ? first_ok->table : (sweep.points.empty() ? Table{} : sweep.points.front().table);
  merged.header.insert(merged.header.end(), shape.header.begin(), shape.header.end());
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    for (const auto& row : sweep.points[i].table.rows) {
      std::vector<std::string> cells = sweep.coordinates[i];
      cells.insert(cells.end(), row.begin(), row.end());
      merged.rows.push_back(std::move(cells));
    }
  }
  if (!merged.header.empty()) write_csv(out, merged);
}

void add_options(CLI::App& app, Options& o) {
  app.add_option("--model", o.model, "ac, bm, td, pq, fiveparam, mu, mixed, mixed-psi, mixed-chi, sixparam");
  for (const char* name : kParamNames) {
    app.add_option_function<std::string>(
        std::string("--") + name, [&o, name](const std::string& v) { o.params[name] = Literal::of(v); },
        std::string("model parameter ") + name + " (a, a/b, or decimal)");
  }
  app.add_option("--backend", o.backend, "auto, exact or float")->check(CLI::IsMember({"auto", "exact", "float"}));
  app.add_option("--n-max", o.n_max, "largest level index")->check(CLI::Range(std::int64_t{0}, std::int64_t{100000}));
  app.add_option("--k-max", o.k_max, "largest order for the minimal-order search")->check(CLI::Range(2, 1000));
  app.add_option("--format", o.format, "json or csv (default from OSC_DEFAULT_FORMAT, else json)");
  app.add_option("--out", o.out_path, "write the report to this path");
  app.add_option("--ansatz", o.ansatz, "qf: splitting, substitution or general")
      ->check(CLI::IsMember({"splitting", "substitution", "general"}));
  app.add_option_function<std::string>("--c", [&o](const std::string& v) { o.c = Literal::of(v); },
                                       "qf substitution: initial lambda_0");
  app.add_option("--gauge", o.gauge, "qf general: const, k1, k2, rho-neg-one, lambda-two, cubic, custom");
  app.add_option_function<std::string>("--k-const", [&o](const std::string& v) { o.k_const = Literal::of(v); },
                                       "value of the const gauge");
  app.add_option_function<std::string>(
      "--gauge-table",
      [&o](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read gauge table '" + path + "'");
        for (std::string line; std::getline(in, line);) {
          if (line.empty() || line == "\r") continue;
          const auto comma = line.find(',');
          if (comma == std::string::npos) throw UsageError("gauge table lines are n,value: '" + line + "'");
          const std::string n_text = line.substr(0, comma);
          std::string value = line.substr(comma + 1);
          if (!value.empty() && value.back() == '\r') value.pop_back();
          std::int64_t n = 0;
          const auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
          if (ec != std::errc() || ptr != n_text.data() + n_text.size()) {
            if (o.gauge_table.empty() && n_text == "n") continue;  // header
            throw UsageError("bad level index in gauge table: '" + n_text + "'");
          }
          o.gauge_table[n] = Literal::of(value);
        }
      },
      "qf custom gauge: CSV file of n,value");
  app.add_option("--grid", o.grid, "sweep axis name=v1,v2,... or name=start:stop:step (repeatable)");
  app.add_option("--command", o.sweep_command, "sweep: command run at each grid point")
      ->check(CLI::IsMember({"spectrum", "classify", "qf", "table1", "gauges"}));
  app.add_flag("--merge", o.merge, "sweep: one JSON array instead of JSON Lines");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.argv = args;
  CLI::App app{"Deformed oscillator spectra, Fibonacci classification and quasi-Fibonacci coefficients", "qfib"};
  app.require_subcommand(1);
  add_options(app, o);
  for (const char* name : {"spectrum", "classify", "qf", "table1", "gauges", "sweep"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    o.subcommand = app.get_subcommands().front()->get_name();
    const std::string format = resolve_format(o);

    std::ofstream file;
    if (!o.out_path.empty()) {
      file.open(o.out_path);
      if (!file) throw UsageError("cannot write '" + o.out_path + "'");
    }
    std::ostream& sink = o.out_path.empty() ? out : file;

    if (o.subcommand == "sweep") {
      SweepResult sweep;
      try {
        sweep = run_sweep(o);
      } catch (const Error& e) {
        emit_single(sink, error_outcome(o, e.name(), e.what()), format);
        err << "qfib: " << e.name() << ": " << e.what() << '\n';
        return kExitDomain;
      }
      emit_sweep(sink, sweep, format, o.merge);
      for (const auto& p : sweep.points) {
        if (p.failed) return kExitDomain;
      }
      return kExitOk;
    }

    const Outcome outcome = run_single(o);
    emit_single(sink, outcome, format);
    if (outcome.failed) {
      const auto& e = outcome.report["error"];
      err << "qfib: " << e["name"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
      return kExitDomain;
    }
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qfib: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "qfib: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qfib::cli
