#pragma once

// Sampled meridian profiles and the observables read off them.

#include <Eigen/Core>

#include "dropshape/core.hpp"

namespace dropshape {

// Scalar summary of an equilibrium shape. The equatorial entries exist only
// for obtuse contact angles, where the meridian has a widest point strictly
// between apex and contact line.
template <class Scalar>
struct DropObservables {
  Scalar contact_radius;                    // rho0, radius of the wetted disk
  Scalar apex_height;                       // h, top of the drop
  std::optional<Scalar> equatorial_radius;  // rho1, widest radius
  std::optional<Scalar> equator_height;     // z1, height of the widest point
  std::optional<Scalar> apex_to_equator;    // h - z1
};

// Meridian curve sampled apex-first, contact line last, monotone in arc
// length. `parameter` is the generator's natural parameter: a polar angle for
// the closed-form profiles, arc length for integrated ones.
template <class Scalar>
struct ProfileSamples {
  using Column = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Points = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

  Column parameter;
  Points points;  // column 0: radial coordinate rho, column 1: height z
  DropObservables<Scalar> observables;
};

template <class Scalar>
DropObservables<Scalar> cap_observables(const SphericalCap<Scalar>& cap) {
  DropObservables<Scalar> obs;
  obs.contact_radius = cap.contact_radius;
  obs.apex_height = cap.apex_height;
  if (cap.equatorial_radius) {
    obs.equatorial_radius = cap.equatorial_radius;
    obs.equator_height = cap.center_height;  // equator plane through the center
    obs.apex_to_equator = cap.apex_height - cap.center_height;  // = R
  }
  return obs;
}

// Cap meridian sampled uniformly in the polar angle seen from the sphere
// center (uniform in arc length). Covers both branches when the contact angle
// is obtuse: rho rises to R at the equator and falls back to rho0.
template <class Scalar>
ProfileSamples<Scalar> spherical_profile(const SphericalCap<Scalar>& cap,
                                         Eigen::Index samples = 400) {
  if (!(cap.radius > Scalar(0)))
    throw invalid_parameter("spherical_profile: cap radius must be positive");
  if (samples < 2)
    throw invalid_parameter("spherical_profile: need at least 2 samples");
  const Scalar cos_contact =
      std::clamp(-cap.center_height / cap.radius, Scalar(-1), Scalar(1));
  const Scalar contact_angle = std::acos(cos_contact);

  ProfileSamples<Scalar> out;
  out.parameter =
      ProfileSamples<Scalar>::Column::LinSpaced(samples, Scalar(0), contact_angle);
  out.points.resize(samples, 2);
  out.points.col(0) = cap.radius * out.parameter.array().sin();
  out.points.col(1) =
      (cap.radius * out.parameter.array().cos() + cap.center_height).max(Scalar(0));
  out.observables = cap_observables(cap);
  return out;
}

// Volume of the solid of revolution between the sampled surface and the plane
// z = 0: chord-trapezoid in height plus the closing slab under the last
// sample. Exact volume recovery is a consistency check on a profile, so the
// quadrature error must be kept below the effect under test by sampling
// densely enough.
template <class Scalar>
Scalar volume_of_revolution(const ProfileSamples<Scalar>& profile) {
  const Eigen::Index n = profile.points.rows();
  if (n < 2)
    throw invalid_parameter("volume_of_revolution: need at least 2 samples");
  Scalar vol = 0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const Scalar r0 = profile.points(i, 0), z0 = profile.points(i, 1);
    const Scalar r1 = profile.points(i + 1, 0), z1 = profile.points(i + 1, 1);
    vol -= (r0 * r0 + r1 * r1) / Scalar(2) * (z1 - z0);
  }
  const Scalar r_last = profile.points(n - 1, 0);
  vol += r_last * r_last * profile.points(n - 1, 1);
  return pi<Scalar> * vol;
}

// Redistribute the samples uniformly in cumulative chord length. Plotting
// helper: closed-form profiles cluster points near the contact line when the
// natural parameter is a polar angle.
template <class Scalar>
ProfileSamples<Scalar> resample_arc_length(const ProfileSamples<Scalar>& profile,
                                           Eigen::Index samples) {
  const Eigen::Index n = profile.points.rows();
  if (n < 2)
    throw invalid_parameter("resample_arc_length: need at least 2 input samples");
  if (samples < 2)
    throw invalid_parameter("resample_arc_length: need at least 2 output samples");

  typename ProfileSamples<Scalar>::Column cumulative(n);
  cumulative[0] = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const Scalar dr = profile.points(i, 0) - profile.points(i - 1, 0);
    const Scalar dz = profile.points(i, 1) - profile.points(i - 1, 1);
    cumulative[i] = cumulative[i - 1] + std::hypot(dr, dz);
  }

  ProfileSamples<Scalar> out;
  out.parameter =
      ProfileSamples<Scalar>::Column::LinSpaced(samples, Scalar(0), cumulative[n - 1]);
  out.points.resize(samples, 2);
  out.observables = profile.observables;
  Eigen::Index seg = 0;
  for (Eigen::Index i = 0; i < samples; ++i) {
    const Scalar target = out.parameter[i];
    while (seg + 2 < n && cumulative[seg + 1] < target) ++seg;
    const Scalar span = cumulative[seg + 1] - cumulative[seg];
    const Scalar t = span > Scalar(0) ? (target - cumulative[seg]) / span : Scalar(0);
    out.points.row(i) =
        profile.points.row(seg) * (Scalar(1) - t) + profile.points.row(seg + 1) * t;
  }
  return out;
}

}  // namespace dropshape
