#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "dropshape/cli.hpp"

namespace dropshape {

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct SweepRow {
  double scale = 0;
  double bond = 0;
  std::optional<ObservableErrors<double>> errors;
  std::string status = "ok";
};

constexpr int column_count = 5;
const char* const column_names[column_count] = {
    "contact_radius", "apex_height", "equatorial_radius", "equator_height",
    "apex_to_equator"};
const char* const column_short[column_count] = {"rho0", "h", "rho1", "z1", "h_tilde"};

std::optional<double> column_value(const ObservableErrors<double>& e, int c) {
  switch (c) {
    case 0: return e.contact_radius;
    case 1: return e.apex_height;
    case 2: return e.equatorial_radius;
    case 3: return e.equator_height;
    case 4: return e.apex_to_equator;
  }
  return std::nullopt;
}

// least-squares slope of log(error) against log(bond); the slope is the
// empirical order of the truncation error in the expansion parameter
std::optional<double> fitted_order(const std::vector<SweepRow>& rows, int c) {
  std::vector<double> x, y;
  for (const SweepRow& row : rows) {
    if (!row.errors) continue;
    const std::optional<double> e = column_value(*row.errors, c);
    if (!e || !(*e > 0) || !(row.bond > 0)) continue;
    x.push_back(std::log(row.bond));
    y.push_back(std::log(*e));
  }
  if (x.size() < 3) return std::nullopt;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) {
    a(static_cast<Eigen::Index>(i), 0) = x[i];
    a(static_cast<Eigen::Index>(i), 1) = 1.0;
    b(static_cast<Eigen::Index>(i)) = y[i];
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

}  // namespace

CommandResult run_sweep(const RunConfig& config) {
  validate(config.fluid);
  validate(config.spec);
  if (config.gravity_scales.empty())
    throw invalid_parameter("run_sweep: need at least one gravity scale");
  for (const double s : config.gravity_scales)
    if (!(s >= 0))
      throw invalid_parameter("run_sweep: gravity scales must be non-negative");

  const bool obtuse = config.spec.contact_angle > pi<double> / 2;
  const int columns = obtuse ? column_count : 2;

  std::vector<SweepRow> rows;
  int successes = 0;
  for (const double scale : config.gravity_scales) {
    SweepRow row;
    row.scale = scale;
    FluidParams<double> scaled = config.fluid;
    scaled.gravity *= scale;
    row.bond = bond_number(config.spec, scaled);
    try {
      row.errors = perturbation_error(config.spec, scaled, config.oracle);
      ++successes;
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      row.status = msg;
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::optional<double>> order(static_cast<size_t>(columns));
  for (int c = 0; c < columns; ++c)
    order[static_cast<size_t>(c)] = fitted_order(rows, c);

  CommandResult result;
  const auto opt_cell = [](const SweepRow& row, int c) -> std::optional<double> {
    return row.errors ? column_value(*row.errors, c) : std::nullopt;
  };

  switch (config.format) {
    case OutputFormat::csv: {
      std::string out = "scale,bond";
      for (int c = 0; c < columns; ++c) out += std::string(",") + column_names[c];
      out += ",status\n";
      for (const SweepRow& row : rows) {
        out += num17(row.scale) + "," + num17(row.bond);
        for (int c = 0; c < columns; ++c) {
          const auto v = opt_cell(row, c);
          out += v ? "," + num17(*v) : ",";
        }
        out += "," + row.status + "\n";
      }
      out += "order,";
      for (int c = 0; c < columns; ++c) {
        const auto v = order[static_cast<size_t>(c)];
        out += v ? "," + num17(*v) : ",";
      }
      out += ",\n";
      result.document = out;
      break;
    }
    case OutputFormat::json: {
      std::string out = "{\n  \"rows\": [\n";
      for (size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        out += "    {\"scale\": " + num17(row.scale) +
               ", \"bond\": " + num17(row.bond) + ", \"errors\": {";
        bool first = true;
        for (int c = 0; c < columns; ++c) {
          const auto v = opt_cell(row, c);
          if (!v) continue;
          if (!first) out += ", ";
          first = false;
          out += "\"" + std::string(column_names[c]) + "\": " + num17(*v);
        }
        out += "}, \"status\": \"" + row.status + "\"}";
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
      }
      out += "  ],\n  \"order\": {";
      bool first = true;
      for (int c = 0; c < columns; ++c) {
        const auto v = order[static_cast<size_t>(c)];
        if (!v) continue;
        if (!first) out += ", ";
        first = false;
        out += "\"" + std::string(column_names[c]) + "\": " + num17(*v);
      }
      out += "}\n}\n";
      result.document = out;
      break;
    }
    case OutputFormat::table: {
      const auto pad = [](std::string s, size_t w) {
        if (s.size() < w) s += std::string(w - s.size(), ' ');
        return s;
      };
      std::string out = pad("scale", 11) + pad("bond", 9);
      for (int c = 0; c < columns; ++c)
        out += pad(std::string("err_") + column_short[c], 13);
      out += "status\n";
      for (const SweepRow& row : rows) {
        out += pad(num("%.4f", row.scale), 11) + pad(num("%.4f", row.bond), 9);
        for (int c = 0; c < columns; ++c) {
          const auto v = opt_cell(row, c);
          out += pad(v ? num("%.3e", *v) : std::string(), 13);
        }
        out += row.status;
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
      }
      out += pad("order", 20);
      for (int c = 0; c < columns; ++c) {
        const auto v = order[static_cast<size_t>(c)];
        out += pad(v ? num("%.3f", *v) : std::string(), 13);
      }
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += "\n";
      result.document = out;
      break;
    }
    case OutputFormat::svg:
      throw invalid_parameter("run_sweep: svg format applies to profile only");
  }

  for (const SweepRow& row : rows)
    if (!row.errors)
      result.diagnostics += "scale " + num("%.4g", row.scale) +
                            " failed: " + row.status + "\n";
  if (successes < 3)
    result.diagnostics +=
        "order fit skipped: fewer than 3 successful scales with nonzero error\n";
  result.exit_code = successes == 0 ? 1 : 0;
  return result;
}

}  // namespace dropshape
