#pragma once

// Parameter sweeps behind the published error tables, with the published
// values of this method's columns alongside.

#include "rkhs/problems.hpp"

#include <iosfwd>

namespace rkhs {

enum class Metric { linf, rel_l2, rms };

const char* metric_name(Metric m);
double metric_value(const ErrorMetrics& e, Metric m);

struct TableCell {
  std::string case_id;
  ParameterOverrides overrides;
  Metric metric = Metric::linf;
  std::optional<double> published;
};

struct TableRow {
  std::string label;
  std::vector<TableCell> cells;  // one per column
};

struct TableSpec {
  std::string id;
  std::string title;
  std::vector<std::string> columns;
  std::vector<TableRow> rows;
};

const std::vector<TableSpec>& list_tables();
const TableSpec& find_table(const std::string& id);

struct TableResult {
  const TableSpec* spec = nullptr;
  std::vector<std::vector<double>> values;  // [row][column]
};

/// Runs every distinct case configuration once; threads <= 1 runs serially.
TableResult compute_table(const TableSpec& spec, unsigned threads = 1);

/// Wide CSV: row label, then each column followed by its published value.
/// Six significant digits.
void write_table_csv(std::ostream& out, const TableResult& result);
nlohmann::json table_to_json(const TableResult& result);

}  // namespace rkhs
