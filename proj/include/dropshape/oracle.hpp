#pragma once

// Independent reference solver: integrates the full axisymmetric equilibrium
// condition in arc length from the apex and shoots on the apex curvature until
// the enclosed volume matches. Used to quantify the first-order correction's
// accuracy; deliberately simple and deterministic (fixed-step classical RK4,
// bisection) rather than fast.
//
// State along the meridian, measured from the apex: radial coordinate rho,
// depth u below the apex, turning angle phi, enclosed volume V.
//   rho' = cos(phi)
//   u'   = sin(phi)
//   phi' = 2 kappa_a + (density g / gamma) u - sin(phi)/rho
//   V'   = pi rho^2 sin(phi)
// sin(phi)/rho -> kappa_a at the apex (removable); integration stops at
// phi = contact angle, where u equals the apex height above the plane.

#include <Eigen/Core>

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dropshape/core.hpp"
#include "dropshape/perturbation.hpp"
#include "dropshape/profile.hpp"

namespace dropshape {

template <class Scalar>
struct OracleConfig {
  Scalar step_fraction = Scalar(5e-4);        // arc step / reference radius, <= 1e-2
  Scalar shooting_tolerance = Scalar(1e-10);  // relative volume mismatch
  int max_shooting_iterations = 200;          // volume evaluations in total
};

template <class Scalar>
void validate(const OracleConfig<Scalar>& config) {
  if (!(config.step_fraction > Scalar(0) && config.step_fraction <= Scalar(1e-2)))
    throw invalid_parameter("OracleConfig: step_fraction must lie in (0, 1e-2]");
  if (!(config.shooting_tolerance > Scalar(0)))
    throw invalid_parameter("OracleConfig: shooting_tolerance must be positive");
  if (config.max_shooting_iterations < 1)
    throw invalid_parameter("OracleConfig: max_shooting_iterations must be >= 1");
}

namespace detail {

template <class Scalar>
struct RawTrace {
  Scalar contact_radius = 0;  // rho at phi = target
  Scalar depth = 0;           // u at phi = target; equals the apex height
  Scalar volume = 0;
  Scalar arc_length = 0;
  std::optional<Scalar> equator_radius;  // at phi = pi/2, obtuse targets only
  std::optional<Scalar> equator_depth;
  std::vector<Scalar> rec_s, rec_rho, rec_u;  // filled only when recording
};

// March from the apex to phi = target_angle. The first two steps come from the
// apex series (clears the removable singularity), the rest is fixed-step RK4.
// The final partial step, and the phi = pi/2 crossing for obtuse targets, are
// landed by bisecting the step size, so endpoints sit on their angles to
// roundoff rather than grid resolution.
template <class Scalar>
RawTrace<Scalar> trace_profile(Scalar kappa, Scalar target_angle, Scalar beta,
                               Scalar step, Scalar max_arc, bool record) {
  using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
  const Scalar half_turn = pi<Scalar> / Scalar(2);

  const auto rhs = [kappa, beta](const Vec4& y) {
    const Scalar rho = y[0], u = y[1], phi = y[2];
    const Scalar sin_phi = std::sin(phi);
    const Scalar meridional = rho > Scalar(0) ? sin_phi / rho : kappa;
    Vec4 d;
    d[0] = std::cos(phi);
    d[1] = sin_phi;
    d[2] = Scalar(2) * kappa + beta * u - meridional;
    d[3] = pi<Scalar> * rho * rho * sin_phi;
    return d;
  };
  const auto rk4 = [&rhs](const Vec4& y, Scalar h) {
    const Vec4 k1 = rhs(y);
    const Vec4 k2 = rhs(y + (h / Scalar(2)) * k1);
    const Vec4 k3 = rhs(y + (h / Scalar(2)) * k2);
    const Vec4 k4 = rhs(y + h * k3);
    return Vec4(y + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4));
  };
  // apex expansion, error O(s^5) per component
  const auto series = [kappa, beta](Scalar s) {
    const Scalar k2 = kappa * kappa, s2 = s * s;
    Vec4 y;
    y[0] = s - k2 * s * s2 / Scalar(6);
    y[1] = kappa * s2 / Scalar(2) +
           (beta * kappa / Scalar(32) - kappa * k2 / Scalar(24)) * s2 * s2;
    y[2] = kappa * s + beta * kappa * s * s2 / Scalar(8);
    y[3] = pi<Scalar> * (kappa * s2 * s2 / Scalar(4) +
                         (beta * kappa / Scalar(8) - kappa * k2 / Scalar(2)) *
                             s2 * s2 * s2 / Scalar(6));
    return y;
  };
  // land phi = angle inside a step of at most h from y by bisecting the step
  const auto land = [&rk4](const Vec4& y, Scalar h, Scalar angle) {
    Scalar lo = 0, hi = h;
    Vec4 best = rk4(y, h);
    for (int it = 0; it < 200; ++it) {
      const Scalar mid = (lo + hi) / Scalar(2);
      if (mid == lo || mid == hi) break;
      const Vec4 probe = rk4(y, mid);
      if (probe[2] < angle) {
        lo = mid;
      } else {
        hi = mid;
        best = probe;
      }
    }
    return std::pair<Scalar, Vec4>(hi, best);
  };

  RawTrace<Scalar> out;
  const bool want_equator = target_angle > half_turn;
  const auto push = [&out, record](Scalar s, const Vec4& y) {
    if (!record) return;
    out.rec_s.push_back(s);
    out.rec_rho.push_back(y[0]);
    out.rec_u.push_back(y[1]);
  };
  const auto finish = [&](Scalar s, const Vec4& y) {
    out.contact_radius = y[0];
    out.depth = y[1];
    out.volume = y[3];
    out.arc_length = s;
    push(s, y);
  };

  Vec4 y = Vec4::Zero();
  Scalar s = 0;
  push(s, y);

  if (series(Scalar(2) * step)[2] >= target_angle) {
    // the whole profile fits inside the series span (huge curvature or tiny
    // target); bisect the series directly
    const auto series_land = [&series](Scalar hi_s, Scalar angle) {
      Scalar lo = 0, hi = hi_s;
      Vec4 best = series(hi_s);
      for (int it = 0; it < 200; ++it) {
        const Scalar mid = (lo + hi) / Scalar(2);
        if (mid == lo || mid == hi) break;
        const Vec4 probe = series(mid);
        if (probe[2] < angle) {
          lo = mid;
        } else {
          hi = mid;
          best = probe;
        }
      }
      return std::pair<Scalar, Vec4>(hi, best);
    };
    if (want_equator) {
      const auto [s_eq, y_eq] = series_land(Scalar(2) * step, half_turn);
      out.equator_radius = y_eq[0];
      out.equator_depth = y_eq[1];
    }
    const auto [s_end, y_end] = series_land(Scalar(2) * step, target_angle);
    finish(s_end, y_end);
    return out;
  }

  y = series(step);
  s = step;
  push(s, y);
  y = series(Scalar(2) * step);
  s = Scalar(2) * step;
  push(s, y);

  while (true) {
    if (s > max_arc)
      throw unbounded_profile(
          "trace_profile: arc length exceeded " + std::to_string(double(max_arc)) +
          " before reaching the contact angle; the curvature is too small to "
          "close a drop of this scale");
    const Vec4 y_next = rk4(y, step);
    if (!(y_next[2] > y[2]))
      throw invalid_regime(
          "trace_profile: turning angle stopped increasing; not a sessile "
          "equilibrium profile");
    if (want_equator && !out.equator_radius && y_next[2] >= half_turn) {
      const auto [ds_eq, y_eq] = land(y, step, half_turn);
      (void)ds_eq;
      out.equator_radius = y_eq[0];
      out.equator_depth = y_eq[1];
    }
    if (y_next[2] >= target_angle) {
      const auto [ds, y_end] = land(y, step, target_angle);
      finish(s + ds, y_end);
      return out;
    }
    if (!(y_next[0] > Scalar(0)))
      throw invalid_regime(
          "trace_profile: meridian pinched the symmetry axis before reaching "
          "the contact angle");
    y = y_next;
    s += step;
    push(s, y);
  }
}

template <class Scalar>
DropObservables<Scalar> trace_observables(const RawTrace<Scalar>& t) {
  DropObservables<Scalar> obs;
  obs.contact_radius = t.contact_radius;
  obs.apex_height = t.depth;
  if (t.equator_radius) {
    obs.equatorial_radius = t.equator_radius;
    obs.apex_to_equator = t.equator_depth;
    obs.equator_height = t.depth - *t.equator_depth;
  }
  return obs;
}

}  // namespace detail

template <class Scalar>
struct IntegratedProfile {
  Scalar apex_curvature;  // kappa_a; the total curvature at the apex is 2 kappa_a
  ProfileSamples<Scalar> profile;  // parameter: arc length from the apex
  Scalar enclosed_volume;
  Scalar arc_length;
  Scalar refinement_defect;  // max relative endpoint change under step halving
};

// Integrate one profile at a prescribed apex curvature up to phi = target.
// reference_radius sets the arc step (step_fraction * reference_radius) and
// the arc budget (10 sphere diameters); 0 means use 1 / apex_curvature.
template <class Scalar>
IntegratedProfile<Scalar> integrate_profile(const FluidParams<Scalar>& fluid,
                                            Scalar apex_curvature,
                                            Scalar target_angle,
                                            const OracleConfig<Scalar>& config = {},
                                            Scalar reference_radius = Scalar(0)) {
  validate(fluid);
  validate(config);
  if (!(apex_curvature > Scalar(0)))
    throw invalid_parameter("integrate_profile: apex curvature must be positive");
  if (!(target_angle > Scalar(0) && target_angle < pi<Scalar>))
    throw invalid_parameter("integrate_profile: target angle must lie in (0, pi)");
  if (!(reference_radius >= Scalar(0)))
    throw invalid_parameter("integrate_profile: reference radius must be non-negative");

  const Scalar ref = reference_radius > Scalar(0) ? reference_radius
                                                  : Scalar(1) / apex_curvature;
  const Scalar beta = fluid.density * fluid.gravity / fluid.surface_tension;
  const Scalar step = config.step_fraction * ref;
  const Scalar max_arc = Scalar(20) * ref;

  const auto full = detail::trace_profile(apex_curvature, target_angle, beta,
                                          step, max_arc, true);
  const auto half = detail::trace_profile(apex_curvature, target_angle, beta,
                                          step / Scalar(2), max_arc, false);

  IntegratedProfile<Scalar> out;
  out.apex_curvature = apex_curvature;
  out.enclosed_volume = full.volume;
  out.arc_length = full.arc_length;
  const auto rel = [](Scalar a, Scalar b) {
    const Scalar scale = std::max(std::abs(a), std::abs(b));
    return scale > Scalar(0) ? std::abs(a - b) / scale : Scalar(0);
  };
  out.refinement_defect =
      std::max({rel(full.contact_radius, half.contact_radius),
                rel(full.depth, half.depth), rel(full.volume, half.volume)});

  const auto n = static_cast<Eigen::Index>(full.rec_s.size());
  out.profile.parameter.resize(n);
  out.profile.points.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.profile.parameter[i] = full.rec_s[static_cast<size_t>(i)];
    out.profile.points(i, 0) = full.rec_rho[static_cast<size_t>(i)];
    out.profile.points(i, 1) = full.depth - full.rec_u[static_cast<size_t>(i)];
  }
  out.profile.observables = detail::trace_observables(full);
  return out;
}

template <class Scalar>
struct OracleSolution {
  Scalar apex_curvature;
  ProfileSamples<Scalar> profile;
  DropObservables<Scalar> observables;
  Scalar achieved_volume;
  Scalar refinement_defect;
  int iterations;  // volume evaluations spent bracketing and bisecting
};

// Solve the boundary value problem: find the apex curvature whose profile
// encloses the requested volume at the requested contact angle. The traced
// volume decreases monotonically with curvature, so plain bisection on an
// expanding bracket is reliable; integrations that outrun the arc budget
// (curvature too small to close the drop) count as infinite volume.
template <class Scalar>
OracleSolution<Scalar> shoot_for_volume(const DropSpec<Scalar>& drop,
                                        const FluidParams<Scalar>& fluid,
                                        const OracleConfig<Scalar>& config = {},
                                        Scalar angle_guard = default_angle_guard<Scalar>) {
  validate(fluid);
  validate(config);
  const SphericalCap<Scalar> cap = solve_sphere(drop, angle_guard);
  const Scalar R = cap.radius;
  const Scalar beta = fluid.density * fluid.gravity / fluid.surface_tension;
  const Scalar step = config.step_fraction * R;
  const Scalar max_arc = Scalar(20) * R;

  int used = 0;
  const auto volume_at = [&](Scalar kappa) -> Scalar {
    ++used;
    try {
      return detail::trace_profile(kappa, drop.contact_angle, beta, step,
                                   max_arc, false)
          .volume;
    } catch (const unbounded_profile&) {
      return std::numeric_limits<Scalar>::infinity();
    }
  };

  // bracket so that volume(lo) >= target >= volume(hi)
  Scalar lo = Scalar(0.1) / R, hi = Scalar(10) / R;
  while (volume_at(lo) < drop.volume) {
    lo /= Scalar(4);
    if (used > config.max_shooting_iterations)
      throw no_convergence(
          "shoot_for_volume: failed to bracket the volume from below");
  }
  while (volume_at(hi) > drop.volume) {
    hi *= Scalar(4);
    if (used > config.max_shooting_iterations)
      throw no_convergence(
          "shoot_for_volume: failed to bracket the volume from above");
  }

  Scalar kappa = (lo + hi) / Scalar(2);
  while (true) {
    const Scalar vol = volume_at(kappa);
    if (std::abs(vol - drop.volume) <= config.shooting_tolerance * drop.volume)
      break;
    if (vol > drop.volume)
      lo = kappa;
    else
      hi = kappa;
    const Scalar next = (lo + hi) / Scalar(2);
    if (next == lo || next == hi)
      throw no_convergence(
          "shoot_for_volume: curvature bracket collapsed to floating-point "
          "resolution before meeting the volume tolerance");
    if (used >= config.max_shooting_iterations)
      throw no_convergence("shoot_for_volume: volume tolerance not met after " +
                           std::to_string(used) + " integrations");
    kappa = next;
  }

  const IntegratedProfile<Scalar> traced =
      integrate_profile(fluid, kappa, drop.contact_angle, config, R);
  OracleSolution<Scalar> out;
  out.apex_curvature = kappa;
  out.profile = traced.profile;
  out.observables = traced.profile.observables;
  out.achieved_volume = traced.enclosed_volume;
  out.refinement_defect = traced.refinement_defect;
  out.iterations = used;
  return out;
}

template <class Scalar>
struct ObservableErrors {
  Scalar bond;            // lambda at which the comparison ran
  Scalar contact_radius;  // |first-order - reference| / reference, per observable
  Scalar apex_height;
  std::optional<Scalar> equatorial_radius;
  std::optional<Scalar> equator_height;
  std::optional<Scalar> apex_to_equator;
};

// Relative deviation of the first-order observables from the integrated
// reference. Scales as lambda^2 while the perturbation stays small.
template <class Scalar>
ObservableErrors<Scalar> perturbation_error(const DropSpec<Scalar>& drop,
                                            const FluidParams<Scalar>& fluid,
                                            const OracleConfig<Scalar>& config = {}) {
  const DropObservables<Scalar> pert = observables(coefficients(drop, fluid));
  const OracleSolution<Scalar> sol = shoot_for_volume(drop, fluid, config);
  const auto rel = [](Scalar approx, Scalar exact) {
    return std::abs(approx - exact) / std::abs(exact);
  };
  ObservableErrors<Scalar> e;
  e.bond = bond_number(drop, fluid);
  e.contact_radius = rel(pert.contact_radius, sol.observables.contact_radius);
  e.apex_height = rel(pert.apex_height, sol.observables.apex_height);
  if (pert.equatorial_radius && sol.observables.equatorial_radius) {
    e.equatorial_radius = rel(*pert.equatorial_radius, *sol.observables.equatorial_radius);
    e.equator_height = rel(*pert.equator_height, *sol.observables.equator_height);
    e.apex_to_equator = rel(*pert.apex_to_equator, *sol.observables.apex_to_equator);
  }
  return e;
}

}  // namespace dropshape
