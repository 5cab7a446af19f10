// Command line front end. Units are CGS throughout: cm^3, degrees, g/cm^3,
// dyn/cm, cm/s^2. Gravity never defaults: published datasets round it
// differently (980 vs 980.7 cm/s^2), so every gravity-dependent command
// requires an explicit --g.

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dropshape/cli.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_computation = 1;
constexpr int exit_usage = 2;

void add_drop_options(CLI::App* cmd, dropshape::RunConfig& config, double& angle_deg) {
  cmd->add_option("--volume", config.spec.volume, "drop volume in cm^3")->required();
  cmd->add_option("--angle", angle_deg, "contact angle in degrees")->required();
  cmd->add_option("--density", config.fluid.density, "liquid density in g/cm^3")
      ->required();
  cmd->add_option("--g", config.fluid.gravity,
                  "gravitational acceleration in cm/s^2 (0 allowed)")
      ->required();
}

void add_oracle_options(CLI::App* cmd, dropshape::RunConfig& config) {
  cmd->add_option("--oracle-step", config.oracle.step_fraction,
                  "integration step as a fraction of the cap radius");
  cmd->add_option("--oracle-tolerance", config.oracle.shooting_tolerance,
                  "relative volume tolerance of the shooting loop");
}

void add_output_option(CLI::App* cmd, dropshape::RunConfig& config) {
  cmd->add_option("--output", config.output_path,
                  "write the document to this file (atomic; default stdout)");
}

int dispatch(const dropshape::RunConfig& config) {
  const dropshape::CommandResult result = dropshape::run(config);
  if (!result.diagnostics.empty()) std::fputs(result.diagnostics.c_str(), stderr);
  if (config.output_path) {
    const std::string path = dropshape::resolve_output_path(*config.output_path);
    dropshape::write_document_atomic(path, result.document);
    std::fprintf(stderr, "wrote %s\n", path.c_str());
  } else {
    std::fputs(result.document.c_str(), stdout);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using dropshape::OutputFormat;
  using dropshape::ProfileMethod;

  CLI::App app{
      "axisymmetric sessile drop shapes: weightless sphere solution, "
      "first-order gravity correction, and an integrated reference model"};
  app.require_subcommand(1);

  dropshape::RunConfig profile_cfg, validate_cfg, sweep_cfg, fit_cfg;
  double profile_angle = 0, sweep_angle = 0, fit_angle = 0;

  const std::map<std::string, ProfileMethod> methods{
      {"sphere", ProfileMethod::sphere},
      {"perturbative", ProfileMethod::perturbative},
      {"oracle", ProfileMethod::oracle}};
  const std::map<std::string, OutputFormat> profile_formats{
      {"csv", OutputFormat::csv}, {"json", OutputFormat::json},
      {"svg", OutputFormat::svg}};
  const std::map<std::string, OutputFormat> report_formats{
      {"table", OutputFormat::table}, {"csv", OutputFormat::csv},
      {"json", OutputFormat::json}};

  CLI::App* profile = app.add_subcommand(
      "profile", "emit one drop profile as CSV, JSON or SVG");
  profile_cfg.command = dropshape::Command::profile;
  add_drop_options(profile, profile_cfg, profile_angle);
  profile->add_option("--gamma", profile_cfg.fluid.surface_tension,
                      "surface tension in dyn/cm")->required();
  profile->add_option("--method", profile_cfg.method, "profile model")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  profile->add_option("--samples", profile_cfg.samples, "number of profile points")
      ->check(CLI::Range(16, 2000000));
  profile_cfg.format = OutputFormat::csv;
  profile->add_option("--format", profile_cfg.format, "csv, json or svg")
      ->transform(CLI::CheckedTransformer(profile_formats, CLI::ignore_case));
  add_oracle_options(profile, profile_cfg);
  add_output_option(profile, profile_cfg);

  CLI::App* validate = app.add_subcommand(
      "validate", "reproduce the embedded experimental comparison");
  validate_cfg.command = dropshape::Command::validate;
  validate_cfg.format = OutputFormat::table;
  validate->add_option("--table", validate_cfg.table_selector,
                       "record selection: 1 (acute), 2 (obtuse) or all")
      ->check(CLI::IsMember({"1", "2", "all"}));
  validate->add_option("--format", validate_cfg.format, "table, csv or json")
      ->transform(CLI::CheckedTransformer(report_formats, CLI::ignore_case));
  add_output_option(validate, validate_cfg);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "first-order vs integrated model error across gravity scales");
  sweep_cfg.command = dropshape::Command::sweep;
  sweep_cfg.format = OutputFormat::table;
  add_drop_options(sweep, sweep_cfg, sweep_angle);
  sweep->add_option("--gamma", sweep_cfg.fluid.surface_tension,
                    "surface tension in dyn/cm")->required();
  sweep->add_option("--scales", sweep_cfg.gravity_scales,
                    "gravity scale factors (default 1 0.5 0.25)");
  sweep->add_option("--format", sweep_cfg.format, "table, csv or json")
      ->transform(CLI::CheckedTransformer(report_formats, CLI::ignore_case));
  add_oracle_options(sweep, sweep_cfg);
  add_output_option(sweep, sweep_cfg);

  CLI::App* fit = app.add_subcommand(
      "fit", "recover the surface tension from measured observables");
  fit_cfg.command = dropshape::Command::fit;
  fit_cfg.format = OutputFormat::table;
  add_drop_options(fit, fit_cfg, fit_angle);
  // target options carry the same names as the observable fields in the
  // csv and json documents; a bare --h would collide with the -h help flag
  double t_rho0 = 0, t_h = 0, t_rho1 = 0, t_htilde = 0;
  CLI::Option* o_rho0 = fit->add_option("--contact-radius", t_rho0,
                                        "measured contact radius in cm");
  CLI::Option* o_h = fit->add_option("--apex-height", t_h,
                                     "measured apex height in cm");
  CLI::Option* o_rho1 = fit->add_option("--equatorial-radius", t_rho1,
                                        "measured equatorial radius in cm");
  CLI::Option* o_htilde = fit->add_option(
      "--apex-to-equator", t_htilde, "measured apex-to-equator distance in cm");
  fit->add_option("--gamma-min", fit_cfg.fit_tension_min,
                  "lower edge of the search range in dyn/cm");
  fit->add_option("--gamma-max", fit_cfg.fit_tension_max,
                  "upper edge of the search range in dyn/cm");
  fit->add_option("--format", fit_cfg.format, "table, csv or json")
      ->transform(CLI::CheckedTransformer(report_formats, CLI::ignore_case));
  add_oracle_options(fit, fit_cfg);
  add_output_option(fit, fit_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (profile->parsed()) {
      profile_cfg.spec.contact_angle = dropshape::radians(profile_angle);
      return dispatch(profile_cfg);
    }
    if (validate->parsed()) return dispatch(validate_cfg);
    if (sweep->parsed()) {
      sweep_cfg.spec.contact_angle = dropshape::radians(sweep_angle);
      return dispatch(sweep_cfg);
    }
    if (fit->parsed()) {
      fit_cfg.spec.contact_angle = dropshape::radians(fit_angle);
      if (o_rho0->count() > 0) fit_cfg.fit_targets.contact_radius = t_rho0;
      if (o_h->count() > 0) fit_cfg.fit_targets.apex_height = t_h;
      if (o_rho1->count() > 0) fit_cfg.fit_targets.equatorial_radius = t_rho1;
      if (o_htilde->count() > 0) fit_cfg.fit_targets.apex_to_equator = t_htilde;
      // fit searches the tension, but the validators need a placeholder
      fit_cfg.fluid.surface_tension = 1.0;
      return dispatch(fit_cfg);
    }
  } catch (const dropshape::invalid_parameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const dropshape::degenerate_geometry& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const dropshape::divergence_guard& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const dropshape::ill_posed& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  } catch (const std::exception& e) {
    // no_convergence, unbounded_profile, invalid_regime, I/O failures
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_computation;
  }
  return exit_ok;
}
