#include <cstdio>
#include <string>

#include "dropshape/cli.hpp"

namespace dropshape {

namespace {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

const char* method_name(ProfileMethod m) {
  switch (m) {
    case ProfileMethod::sphere: return "sphere";
    case ProfileMethod::perturbative: return "perturbative";
    case ProfileMethod::oracle: return "oracle";
  }
  return "?";
}

std::string profile_csv(const ProfileSamples<double>& prof) {
  std::string out = "theta_or_s,rho,z\n";
  for (Eigen::Index i = 0; i < prof.points.rows(); ++i) {
    out += num17(prof.parameter[i]);
    out += "," + num17(prof.points(i, 0));
    out += "," + num17(prof.points(i, 1));
    out += "\n";
  }
  return out;
}

void json_observable_fields(std::string& out, const DropObservables<double>& obs) {
  out += "\"contact_radius\": " + num17(obs.contact_radius);
  out += ", \"apex_height\": " + num17(obs.apex_height);
  if (obs.equatorial_radius)
    out += ", \"equatorial_radius\": " + num17(*obs.equatorial_radius);
  if (obs.equator_height)
    out += ", \"equator_height\": " + num17(*obs.equator_height);
  if (obs.apex_to_equator)
    out += ", \"apex_to_equator\": " + num17(*obs.apex_to_equator);
}

std::string profile_json(const ProfileSamples<double>& prof, ProfileMethod method,
                         const char* parameter_kind, double bond) {
  std::string out = "{\n";
  out += "  \"method\": \"" + std::string(method_name(method)) + "\",\n";
  out += "  \"parameter\": \"" + std::string(parameter_kind) + "\",\n";
  out += "  \"bond\": " + num17(bond) + ",\n";
  out += "  \"observables\": {";
  json_observable_fields(out, prof.observables);
  out += "},\n  \"points\": [\n";
  for (Eigen::Index i = 0; i < prof.points.rows(); ++i) {
    out += "    [" + num17(prof.parameter[i]) + ", " + num17(prof.points(i, 0)) +
           ", " + num17(prof.points(i, 1)) + "]";
    out += (i + 1 < prof.points.rows()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string describe(const DropObservables<double>& obs) {
  std::string s = "rho0 = " + num4(obs.contact_radius) + " cm, h = " +
                  num4(obs.apex_height) + " cm";
  if (obs.equatorial_radius) s += ", rho1 = " + num4(*obs.equatorial_radius) + " cm";
  if (obs.apex_to_equator) s += ", h_tilde = " + num4(*obs.apex_to_equator) + " cm";
  return s;
}

}  // namespace

CommandResult run_profile(const RunConfig& config) {
  validate(config.fluid);
  validate(config.spec);
  if (config.samples < 16)
    throw invalid_parameter("run_profile: need at least 16 samples");

  const SphericalCap<double> cap = solve_sphere(config.spec);
  const double bond = bond_number(config.spec, config.fluid);

  ProfileSamples<double> prof;
  const char* parameter_kind = "polar_angle";
  switch (config.method) {
    case ProfileMethod::sphere:
      prof = spherical_profile(cap, config.samples);
      break;
    case ProfileMethod::perturbative: {
      const auto k = coefficients(config.spec, config.fluid);
      prof = perturbed_profile(k, config.samples);
      break;
    }
    case ProfileMethod::oracle: {
      const auto sol = shoot_for_volume(config.spec, config.fluid, config.oracle);
      prof = resample_arc_length(sol.profile, config.samples);
      parameter_kind = "arc_length";
      break;
    }
  }

  CommandResult result;
  switch (config.format) {
    case OutputFormat::csv:
      result.document = profile_csv(prof);
      break;
    case OutputFormat::json:
      result.document = profile_json(prof, config.method, parameter_kind, bond);
      break;
    case OutputFormat::svg: {
      char sub[160];
      std::snprintf(sub, sizeof sub,
                    "V = %g cm3, angle = %g deg, density = %g g/cm3, gamma = %g "
                    "dyn/cm, g = %g cm/s2",
                    config.spec.volume, degrees(config.spec.contact_angle),
                    config.fluid.density, config.fluid.surface_tension,
                    config.fluid.gravity);
      std::optional<ProfileSamples<double>> overlay;
      if (config.method != ProfileMethod::sphere)
        overlay = spherical_profile(cap, config.samples);
      result.document = render_profile_svg(prof, method_name(config.method),
                                           overlay, "sphere", sub);
      break;
    }
    case OutputFormat::table:
      throw invalid_parameter("run_profile: table format applies to validate only");
  }

  result.diagnostics = std::string(method_name(config.method)) + " profile, bond = " +
                       num4(bond) + ": " + describe(prof.observables) + "\n";
  if (bond > 1.0)
    result.diagnostics +=
        "warning: bond parameter exceeds 1; the first-order truncation is not "
        "controlled here\n";
  return result;
}

}  // namespace dropshape
