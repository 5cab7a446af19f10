#pragma once

// Command layer shared by the executable and the tests. Each run_* function is
// pure apart from reading its config: it returns the emitted document plus
// human-readable diagnostics, and signals failure through exceptions (mapped
// to exit codes by the executable) or through CommandResult::exit_code for
// soft failures that still produce a report.

#include <optional>
#include <string>
#include <vector>

#include "dropshape/core.hpp"
#include "dropshape/oracle.hpp"
#include "dropshape/validation.hpp"

namespace dropshape {

enum class Command { profile, validate, sweep, fit };
enum class ProfileMethod { sphere, perturbative, oracle };
enum class OutputFormat { csv, json, svg, table };

struct RunConfig {
  Command command = Command::profile;
  DropSpec<double> spec{0.0, 0.0};
  // gravity must always come from the caller: common datasets round it
  // differently (980 vs 980.7 cm/s^2), so there is no safe default
  FluidParams<double> fluid{1.0, 1.0, -1.0};
  ProfileMethod method = ProfileMethod::perturbative;
  int samples = 400;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> output_path;

  std::string table_selector = "all";          // validate: "1" | "2" | "all"
  std::vector<double> gravity_scales = {1.0, 0.5, 0.25};  // sweep
  MeasuredShape fit_targets;                   // fit: observables to match
  double fit_tension_min = 1.0;                // fit: surface tension bracket
  double fit_tension_max = 2000.0;
  OracleConfig<double> oracle;
};

struct CommandResult {
  int exit_code = 0;
  std::string document;     // CSV / JSON / SVG / aligned text
  std::string diagnostics;  // notes and warnings, kept off the document stream
};

CommandResult run_profile(const RunConfig& config);
CommandResult run_validate(const RunConfig& config);
CommandResult run_sweep(const RunConfig& config);
CommandResult run_fit(const RunConfig& config);
CommandResult run(const RunConfig& config);

// self-contained SVG: solid curve, optional dashed overlay, substrate line,
// fixed 800x600 viewport autoscaled to the curves with a 5% margin
std::string render_profile_svg(const ProfileSamples<double>& solid,
                               const std::string& solid_label,
                               const std::optional<ProfileSamples<double>>& dashed,
                               const std::string& dashed_label,
                               const std::string& subtitle);

// honors DROPSHAPE_OUTPUT_DIR for relative paths
std::string resolve_output_path(const std::string& path);

// temp file in the target directory + rename, so readers never see a partial file
void write_document_atomic(const std::string& path, const std::string& content);

}  // namespace dropshape
