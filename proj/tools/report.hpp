#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfib/quasifib.hpp"
#include "qfib/recurrence.hpp"

namespace qfib::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

/// Exact values as {"num","den"} strings, Float values as plain numbers.
Json encode(const Rational& x);
Json encode(double x);

/// Inverse of encode(Rational). Throws std::invalid_argument on malformed input.
Rational decode_rational(const Json& j);

/// "num/den" ("num" for integers) or the shortest round-trip decimal.
std::string csv_cell(const Rational& x);
std::string csv_cell(double x);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const Table& table, bool with_header = true);
std::string csv_escape(const std::string& field);

/// A payload rendered both ways; JSON is the primary form.
struct Rendered {
  Json payload;
  Table table;
};

template <Scalar T>
Json encode_model(const OscillatorModel<T>& model);

template <Scalar T>
Rendered render_spectrum(const EnergySequence<T>& energies);

template <Scalar T>
Rendered render_recurrence(const RecurrenceReport<T>& report, const std::optional<FibonacciConstants<T>>& closed);

template <Scalar T>
Rendered render_qf(const QFSolution<T>& solution, const QFCheck<T>& check);

template <Scalar T>
Rendered render_table1(const std::vector<Table1Row<T>>& rows);

template <Scalar T>
struct ConstraintRow {
  std::string constraint;
  std::int64_t n;
  T k;
  T lambda;
  T rho;
  T residual;
};

template <Scalar T>
Rendered render_gauges(const std::vector<AuditEntry<T>>& audit, const std::vector<ConstraintRow<T>>& constraints,
                       std::int64_t n_max);

}  // namespace qfib::cli
