#pragma once

// First-order gravity correction to the spherical cap, in two charts:
//
//  * a Cartesian height correction f1(rho) on the concave (upper) branch,
//    valid away from the equator where its derivative diverges, and
//  * a polar radial correction r1(theta) about the pole (0, d), d = R - z0,
//    which is smooth through the equator and covers the whole meridian.
//
// The perturbed meridian is r(theta) = 2 R cos(theta) + lambda r1(theta),
// mapped by rho = r sin(theta), z = r cos(theta) - d, with the contact line at
// theta0 = atan(rho0 / d) < pi/2. All corrections are first order in the
// dimensionless gravity strength lambda = V^(2/3) density g / gamma.

#include <Eigen/Core>

#include "dropshape/core.hpp"
#include "dropshape/profile.hpp"

namespace dropshape {

template <class Scalar>
struct PerturbationCoefficients {
  Scalar bond;                 // lambda
  Scalar contact_shift;        // delta_rho0 > 0, first-order contact widening
  Scalar pressure_const;       // a < 0, first-order apex pressure offset (a length)
  Scalar integration_const;    // b, fixed by z = 0 at the shifted contact line;
                               // stored with its R^3 / V^(2/3) prefactor included
  Scalar pole_offset;          // d = R (1 + cos theta), height of the polar origin
  Scalar contact_polar_angle;  // theta0 = atan(rho0 / d), image of the contact line
  Scalar profile_scale;        // R^3 / V^(2/3), common prefactor of first-order terms
  SphericalCap<Scalar> cap;    // embedded weightless solution

  // first order is not a small correction any more; results stay finite but
  // only qualitative
  bool beyond_small_bond() const { return bond > Scalar(1); }
};

template <class Scalar>
PerturbationCoefficients<Scalar> coefficients(
    const DropSpec<Scalar>& drop, const FluidParams<Scalar>& fluid,
    Scalar angle_guard = default_angle_guard<Scalar>) {
  validate(fluid);
  PerturbationCoefficients<Scalar> k;
  k.cap = solve_sphere(drop, angle_guard);
  const Scalar R = k.cap.radius;
  const Scalar c = std::cos(drop.contact_angle);
  const Scalar s = std::sin(drop.contact_angle);

  k.bond = bond_number(drop, fluid);
  k.profile_scale = R * R * R / std::cbrt(drop.volume * drop.volume);
  // delta_rho0 = (density g R^3 / 6 gamma) (1-c)^2 / (s (2+c))
  k.contact_shift = fluid.density * fluid.gravity * R * R * R /
                    (Scalar(6) * fluid.surface_tension) * (Scalar(1) - c) *
                    (Scalar(1) - c) / (s * (Scalar(2) + c));
  // a = -R (1-c)(3+c) / (3 (2+c))
  k.pressure_const =
      -R * (Scalar(1) - c) * (Scalar(3) + c) / (Scalar(3) * (Scalar(2) + c));
  // b = (R^3/V^(2/3)) [ c / (2(2+c)) + (2/3) ln cos(theta/2) ]
  k.integration_const =
      k.profile_scale * (c / (Scalar(2) * (Scalar(2) + c)) +
                         Scalar(2) / Scalar(3) *
                             std::log(std::cos(drop.contact_angle / Scalar(2))));
  k.pole_offset = R * (Scalar(1) + c);
  k.contact_polar_angle =
      std::atan((k.cap.contact_radius + k.contact_shift) / k.pole_offset);
  return k;
}

template <class Scalar>
struct FirstOrderCorrection {
  Scalar value;  // f1(rho), a length
  Scalar slope;  // d f1 / d rho, dimensionless
};

// Cartesian first-order height correction on the concave branch and its
// radial slope,
//   f1(rho)  = P [ (3(z0+a) + 2R) / (6 w) - ln((R+w)/(2R)) / 3 ] + b,
//   f1'(rho) = P [ (z0+a) rho / (2 w^3) + (R^3 - w^3) / (3 rho w^3) ],
// with w = sqrt(R^2 - rho^2) and P = R^3/V^(2/3). The slope's two 1/rho pieces
// cancel at the axis (limit 0); R^3 - w^3 is formed via expm1/log1p so the
// cancellation costs no precision. The slope diverges at rho -> R, hence the
// guard band: beyond guard_fraction * R evaluation refuses and the polar form
// must be used instead.
template <class Scalar>
FirstOrderCorrection<Scalar> f1_concave(Scalar rho,
                                        const PerturbationCoefficients<Scalar>& k,
                                        Scalar guard_fraction = Scalar(0.95)) {
  const Scalar R = k.cap.radius;
  if (!(guard_fraction > Scalar(0) && guard_fraction < Scalar(1)))
    throw invalid_parameter("f1_concave: guard fraction must lie in (0, 1)");
  if (!(rho >= Scalar(0)))
    throw invalid_parameter("f1_concave: radial coordinate must be non-negative");
  if (rho > guard_fraction * R)
    throw divergence_guard(
        "f1_concave: rho = " + std::to_string(double(rho)) + " beyond " +
        std::to_string(double(guard_fraction)) +
        " * R; the Cartesian correction diverges toward the equator, evaluate "
        "the polar correction instead");

  const Scalar x = (rho / R) * (rho / R);
  const Scalar w = R * std::sqrt(Scalar(1) - x);
  const Scalar za = k.cap.center_height + k.pressure_const;  // z0 + a
  FirstOrderCorrection<Scalar> f;
  f.value = k.profile_scale * ((Scalar(3) * za + Scalar(2) * R) / (Scalar(6) * w) -
                               std::log((R + w) / (Scalar(2) * R)) / Scalar(3)) +
            k.integration_const;
  if (rho == Scalar(0)) {
    f.slope = 0;
    return f;
  }
  const Scalar r3_minus_w3 =
      -R * R * R * std::expm1(Scalar(1.5) * std::log1p(-x));
  f.slope = k.profile_scale *
            (za * rho / (Scalar(2) * w * w * w) +
             r3_minus_w3 / (Scalar(3) * rho * w * w * w));
  return f;
}

// Polar first-order radial correction about the pole (0, d),
//   r1(theta) = (P / cos theta) [ (3(z0+a)+2R)/(6R) - (2/3) cos(2 theta) ln cos(theta) ]
//             + b cos(2 theta) / cos(theta).
// Smooth through the sphere's equator image theta = pi/4; the only divergence
// is at theta -> pi/2, which the contact image theta0 never reaches.
template <class Scalar>
Scalar r1_polar(Scalar theta, const PerturbationCoefficients<Scalar>& k) {
  if (!(theta >= Scalar(0)))
    throw invalid_parameter("r1_polar: theta must be non-negative");
  if (!(theta < pi<Scalar> / Scalar(2)))
    throw degenerate_geometry(
        "r1_polar: theta = " + std::to_string(double(theta)) +
        " outside [0, pi/2); the polar chart ends at the plane of the pole");
  const Scalar R = k.cap.radius;
  const Scalar za = k.cap.center_height + k.pressure_const;
  const Scalar ct = std::cos(theta);
  const Scalar c2t = std::cos(Scalar(2) * theta);
  return k.profile_scale / ct *
             ((Scalar(3) * za + Scalar(2) * R) / (Scalar(6) * R) -
              Scalar(2) / Scalar(3) * c2t * std::log(ct)) +
         k.integration_const * c2t / ct;
}

// First-order observables. The apex height corrects the cap height by
// lambda f1(0); the equatorial quantities follow from the polar correction at
// theta = pi/4 (the image of the sphere's equator), where the widest point
// sits to first order:
//   rho1 = R + lambda sin(pi/4) r1(pi/4),
//   h - z1 = R + lambda P [ (3(z0+a)+2R)/(6R) - ln(2)/3 ].
template <class Scalar>
DropObservables<Scalar> observables(const PerturbationCoefficients<Scalar>& k) {
  const Scalar R = k.cap.radius;
  const Scalar za = k.cap.center_height + k.pressure_const;
  const Scalar axis_term =
      k.profile_scale * (Scalar(3) * za + Scalar(2) * R) / (Scalar(6) * R);

  DropObservables<Scalar> obs;
  obs.contact_radius = k.cap.contact_radius + k.contact_shift;
  obs.apex_height =
      k.cap.apex_height + k.bond * (axis_term + k.integration_const);
  if (k.cap.equatorial_radius) {
    obs.equatorial_radius =
        R + k.bond * std::sin(pi<Scalar> / Scalar(4)) *
                r1_polar(pi<Scalar> / Scalar(4), k);
    obs.apex_to_equator =
        R + k.bond * (axis_term -
                      k.profile_scale * std::numbers::ln2_v<Scalar> / Scalar(3));
    obs.equator_height = obs.apex_height - *obs.apex_to_equator;
  }
  return obs;
}

// Full first-order meridian sampled uniformly in theta on [0, theta0]. The
// last sample misses the plane z = 0 by O(lambda^2) R, the closure residual of
// a first-order solution.
template <class Scalar>
ProfileSamples<Scalar> perturbed_profile(const PerturbationCoefficients<Scalar>& k,
                                         Eigen::Index samples = 400) {
  if (samples < 16)
    throw invalid_parameter("perturbed_profile: need at least 16 samples");
  ProfileSamples<Scalar> out;
  out.parameter = ProfileSamples<Scalar>::Column::LinSpaced(
      samples, Scalar(0), k.contact_polar_angle);
  out.points.resize(samples, 2);
  for (Eigen::Index i = 0; i < samples; ++i) {
    const Scalar theta = out.parameter[i];
    const Scalar r =
        Scalar(2) * k.cap.radius * std::cos(theta) + k.bond * r1_polar(theta, k);
    out.points(i, 0) = r * std::sin(theta);
    out.points(i, 1) = r * std::cos(theta) - k.pole_offset;
  }
  out.observables = observables(k);
  return out;
}

// Apex mean curvature consistent with the first-order solution: the exact
// contact identity (below) solved for kappa around the shifted contact radius,
//   kappa = 1/R - delta_rho0 / (R^2 sin theta)
//         + density g V / (2 pi gamma R^2 sin^2 theta) - (density g / 2 gamma) h.
template <class Scalar>
Scalar first_order_kappa(const PerturbationCoefficients<Scalar>& k,
                         const DropSpec<Scalar>& drop,
                         const FluidParams<Scalar>& fluid) {
  const Scalar R = k.cap.radius;
  const Scalar s = std::sin(drop.contact_angle);
  const Scalar beta = fluid.density * fluid.gravity / fluid.surface_tension;
  return Scalar(1) / R - k.contact_shift / (R * R * s) +
         beta * drop.volume / (Scalar(2) * pi<Scalar> * R * R * s * s) -
         beta / Scalar(2) * observables(k).apex_height;
}

// Every equilibrium profile satisfies exactly
//   kappa + (density g / 2 gamma) h = sin(theta)/rho0 + density g V / (2 pi gamma rho0^2),
// which ties the apex curvature to contact radius, apex height and volume.
// Returns the relative residual; an exact solution gives integration noise, a
// first-order solution gives O(lambda^2).
template <class Scalar>
Scalar contact_identity_residual(const DropObservables<Scalar>& obs,
                                 const DropSpec<Scalar>& drop,
                                 const FluidParams<Scalar>& fluid, Scalar kappa) {
  const Scalar beta = fluid.density * fluid.gravity / fluid.surface_tension;
  const Scalar lhs = kappa + beta / Scalar(2) * obs.apex_height;
  const Scalar rho0 = obs.contact_radius;
  const Scalar rhs = std::sin(drop.contact_angle) / rho0 +
                     beta * drop.volume / (Scalar(2) * pi<Scalar> * rho0 * rho0);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

template <class Scalar>
Scalar contact_identity_residual(const ProfileSamples<Scalar>& profile,
                                 const DropSpec<Scalar>& drop,
                                 const FluidParams<Scalar>& fluid, Scalar kappa) {
  return contact_identity_residual(profile.observables, drop, fluid, kappa);
}

}  // namespace dropshape
