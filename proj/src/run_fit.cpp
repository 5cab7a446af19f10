#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

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

// golden-section search; f must be unimodal on [lo, hi], which holds for the
// squared mismatch because every observable varies monotonically with the
// surface tension at fixed volume and contact angle
template <class F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, double rel_tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while ((b - a) > rel_tol * (std::abs(a) + std::abs(b)) / 2) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair<double, double>(c, fc) : std::pair<double, double>(d, fd);
}

}  // namespace

CommandResult run_fit(const RunConfig& config) {
  validate(config.spec);
  if (!(config.fluid.density > 0))
    throw invalid_parameter("run_fit: density must be positive");
  if (!(config.fluid.gravity > 0))
    throw ill_posed(
        "run_fit: with g = 0 the drop shape is independent of the surface "
        "tension, so the fit is ill-posed");
  const MeasuredShape& t = config.fit_targets;
  if (!t.contact_radius && !t.apex_height && !t.equatorial_radius && !t.apex_to_equator)
    throw invalid_parameter("run_fit: supply at least one target observable");
  for (const std::optional<double> v :
       {t.contact_radius, t.apex_height, t.equatorial_radius, t.apex_to_equator})
    if (v && !(*v > 0))
      throw invalid_parameter("run_fit: target observables must be positive");
  if ((t.equatorial_radius || t.apex_to_equator) &&
      !(config.spec.contact_angle > pi<double> / 2))
    throw invalid_parameter(
        "run_fit: equatorial targets require an obtuse contact angle");
  if (!(config.fit_tension_min > 0 &&
        config.fit_tension_max > config.fit_tension_min))
    throw invalid_parameter("run_fit: surface tension bracket must satisfy 0 < min < max");

  const auto mismatch = [&t](const DropObservables<double>& pred) {
    double sse = 0;
    const auto add = [&sse](const std::optional<double>& target,
                            const std::optional<double>& p) {
      if (!target) return;
      if (!p)
        throw ill_posed("run_fit: the model does not produce a targeted observable");
      const double r = (*p - *target) / *target;
      sse += r * r;
    };
    add(t.contact_radius, pred.contact_radius);
    add(t.apex_height, pred.apex_height);
    add(t.equatorial_radius, pred.equatorial_radius);
    add(t.apex_to_equator, pred.apex_to_equator);
    return sse;
  };

  int oracle_evals = 0;
  const auto first_order_objective = [&](double gamma) {
    const FluidParams<double> trial{config.fluid.density, gamma, config.fluid.gravity};
    return mismatch(observables(coefficients(config.spec, trial)));
  };
  const auto oracle_objective = [&](double gamma) {
    ++oracle_evals;
    const FluidParams<double> trial{config.fluid.density, gamma, config.fluid.gravity};
    return mismatch(shoot_for_volume(config.spec, trial, config.oracle).observables);
  };

  // the closed form is cheap, so it scans the whole allowed range and hands
  // the expensive integrated model a narrow starting bracket
  const auto [estimate, estimate_residual] = golden_minimize(
      first_order_objective, config.fit_tension_min, config.fit_tension_max, 1e-4);
  (void)estimate_residual;

  double lo = std::max(config.fit_tension_min, estimate / 5);
  double hi = std::min(config.fit_tension_max, estimate * 5);
  double fitted = 0, residual = 0;
  for (int expansion = 0;; ++expansion) {
    const auto [x, fx] = golden_minimize(oracle_objective, lo, hi, 1e-6);
    fitted = x;
    residual = fx;
    const double width = hi - lo;
    const bool slid_low = (x - lo) < 0.02 * width && lo > config.fit_tension_min;
    const bool slid_high = (hi - x) < 0.02 * width && hi < config.fit_tension_max;
    if (!slid_low && !slid_high) break;
    if (expansion >= 3)
      throw no_convergence(
          "run_fit: the minimum keeps sliding to the bracket edge");
    if (slid_low) lo = std::max(config.fit_tension_min, lo / 5);
    if (slid_high) hi = std::min(config.fit_tension_max, hi * 5);
  }
  const double range = config.fit_tension_max - config.fit_tension_min;
  if (fitted - config.fit_tension_min < 1e-3 * range ||
      config.fit_tension_max - fitted < 1e-3 * range)
    throw no_convergence(
        "run_fit: no interior minimum inside the allowed surface tension range");

  CommandResult result;
  switch (config.format) {
    case OutputFormat::csv:
      result.document =
          "surface_tension_dyn_cm,residual,initial_estimate_dyn_cm,oracle_evaluations\n" +
          num17(fitted) + "," + num17(residual) + "," + num17(estimate) + "," +
          std::to_string(oracle_evals) + "\n";
      break;
    case OutputFormat::json: {
      std::string out = "{\n";
      out += "  \"surface_tension_dyn_cm\": " + num17(fitted) + ",\n";
      out += "  \"residual\": " + num17(residual) + ",\n";
      out += "  \"initial_estimate_dyn_cm\": " + num17(estimate) + ",\n";
      out += "  \"oracle_evaluations\": " + std::to_string(oracle_evals) + ",\n";
      out += "  \"targets\": {";
      bool first = true;
      const auto field = [&out, &first](const char* key, const std::optional<double>& v) {
        if (!v) return;
        if (!first) out += ", ";
        first = false;
        out += "\"" + std::string(key) + "\": " + num17(*v);
      };
      field("contact_radius", t.contact_radius);
      field("apex_height", t.apex_height);
      field("equatorial_radius", t.equatorial_radius);
      field("apex_to_equator", t.apex_to_equator);
      out += "}\n}\n";
      result.document = out;
      break;
    }
    case OutputFormat::table:
      result.document =
          "fitted surface tension: " + num("%.4f", fitted) + " dyn/cm\n" +
          "residual (sum of squared relative mismatch): " + num("%.3e", residual) +
          "\n" + "first-order initial estimate: " + num("%.4f", estimate) +
          " dyn/cm\nintegrated-model evaluations: " + std::to_string(oracle_evals) +
          "\n";
      break;
    case OutputFormat::svg:
      throw invalid_parameter("run_fit: svg format applies to profile only");
  }

  const FluidParams<double> at_fit{config.fluid.density, fitted, config.fluid.gravity};
  result.diagnostics =
      "bond parameter at fitted tension: " + num("%.4f", bond_number(config.spec, at_fit)) + "\n";
  if (residual > 1e-2)
    result.diagnostics +=
        "warning: residual above 1e-2; these observables are not well explained "
        "by an equilibrium drop of this volume and angle\n";
  return result;
}

}  // namespace dropshape
