#include <cstdio>
#include <string>
#include <vector>

#include "dropshape/cli.hpp"

namespace dropshape {

namespace {

std::string num(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

CommandResult run_validate(const RunConfig& config) {
  const std::vector<ExperimentRecord> dataset = builtin_dataset();
  std::vector<size_t> selected;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const bool acute = dataset[i].spec.contact_angle < pi<double> / 2;
    if (config.table_selector == "all" || (config.table_selector == "1" && acute) ||
        (config.table_selector == "2" && !acute))
      selected.push_back(i);
  }
  if (selected.empty())
    throw invalid_parameter("run_validate: table selector must be 1, 2 or all");

  std::vector<ComparisonRow> rows;
  rows.reserve(selected.size());
  for (const size_t i : selected) rows.push_back(compare(dataset[i]));

  ReportFormat format = ReportFormat::table;
  switch (config.format) {
    case OutputFormat::table: format = ReportFormat::table; break;
    case OutputFormat::json: format = ReportFormat::json; break;
    case OutputFormat::csv: format = ReportFormat::csv; break;
    case OutputFormat::svg:
      throw invalid_parameter("run_validate: svg format applies to profile only");
  }

  CommandResult result;
  result.document = report(rows, format);

  for (const ComparisonRow& row : rows) {
    if (row.beyond_small_bond)
      result.diagnostics += "warning: " + row.record.label +
                            ": bond parameter " + num("%.2f", row.bond) +
                            " exceeds 1; the expansion parameter is not small\n";
    if (row.anomalous)
      result.diagnostics += "note: " + row.record.label +
                            ": measurement deviates from the sphere solution "
                            "opposite to gravity's push\n";
  }

  const ReproductionReport rep = check_reproduction(selected);
  result.diagnostics +=
      "reproduction: " + std::to_string(rep.value_cells) + " theory cells, worst |" +
      rep.worst_value.cell + "| off by " + num("%.1e", rep.worst_value.deviation) +
      " cm (allowed " + num("%.1e", rep.worst_value.tolerance) + ")\n";
  result.diagnostics +=
      "reproduction: " + std::to_string(rep.error_cells) +
      " percent cells, worst |" + rep.worst_error.cell + "| off by " +
      num("%.2f", rep.worst_error.deviation) + " pp (allowed " +
      num("%.2f", rep.worst_error.tolerance) + ")\n";
  if (!rep.ok) {
    for (const CellCheck& f : rep.failures)
      result.diagnostics += "reproduction failure: " + f.cell + ": computed " +
                            num("%.6f", f.computed) + " vs reference " +
                            num("%.6f", f.reference) + "\n";
    result.exit_code = 1;
  }
  return result;
}

}  // namespace dropshape
