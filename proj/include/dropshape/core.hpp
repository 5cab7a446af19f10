#pragma once

// Axisymmetric sessile drop on a horizontal plane: shared parameter types and
// the weightless (zero-gravity) equilibrium, which is a spherical cap.
// The library assumes one consistent unit system; the CLI layer uses CGS.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace dropshape {

// ---- errors ----------------------------------------------------------------

// a precondition on sizes or signs was violated
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// the requested geometry has no equilibrium shape (angle at a degenerate
// limit, adhesion outside the wetting range, coordinate outside its chart)
class degenerate_geometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// the Cartesian first-order correction was evaluated inside its guard band
// around the equator, where its radial derivative diverges
class divergence_guard : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// profile integration left the sessile regime (turning angle stopped
// increasing, or the meridian pinched the symmetry axis)
class invalid_regime : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// profile integration exceeded its arc-length budget without reaching the
// target contact angle
class unbounded_profile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// an iterative solver ran out of iterations or lost its bracket
class no_convergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// the request carries no information about the quantity asked for
// (e.g. fitting surface tension from weightless observables)
class ill_posed : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---- angles ----------------------------------------------------------------

template <class Scalar>
inline constexpr Scalar pi = std::numbers::pi_v<Scalar>;

template <class Scalar>
constexpr Scalar radians(Scalar degrees) {
  return degrees * pi<Scalar> / Scalar(180);
}

template <class Scalar>
constexpr Scalar degrees(Scalar radians) {
  return radians * Scalar(180) / pi<Scalar>;
}

// contact angles closer than 0.5 deg to 0 or 180 deg are rejected by default:
// the cap radius and the first-order coefficients blow up at both limits
template <class Scalar>
inline constexpr Scalar default_angle_guard = pi<Scalar> / Scalar(360);

// ---- parameters ------------------------------------------------------------

template <class Scalar>
struct FluidParams {
  Scalar density;          // mass / volume
  Scalar surface_tension;  // force / length
  Scalar gravity;          // acceleration, >= 0 (0 = weightless)
};

template <class Scalar>
void validate(const FluidParams<Scalar>& fluid) {
  if (!(fluid.density > Scalar(0)))
    throw invalid_parameter("FluidParams: density must be positive");
  if (!(fluid.surface_tension > Scalar(0)))
    throw invalid_parameter("FluidParams: surface tension must be positive");
  if (!(fluid.gravity >= Scalar(0)))
    throw invalid_parameter("FluidParams: gravity must be non-negative");
}

template <class Scalar>
struct DropSpec {
  Scalar volume;         // enclosed volume, > 0
  Scalar contact_angle;  // radians, in (0, pi)
};

template <class Scalar>
void validate(const DropSpec<Scalar>& drop,
              Scalar angle_guard = default_angle_guard<Scalar>) {
  if (!(drop.volume > Scalar(0)))
    throw invalid_parameter("DropSpec: volume must be positive");
  if (!(drop.contact_angle >= angle_guard &&
        drop.contact_angle <= pi<Scalar> - angle_guard))
    throw degenerate_geometry(
        "DropSpec: contact angle " + std::to_string(double(drop.contact_angle)) +
        " rad outside the guarded range [" + std::to_string(double(angle_guard)) +
        ", pi - " + std::to_string(double(angle_guard)) + "]");
}

// ---- weightless solution ---------------------------------------------------

// Spherical cap of radius R resting on the plane z = 0. The center height is
// signed: negative for acute contact angles, positive for obtuse ones.
template <class Scalar>
struct SphericalCap {
  Scalar radius;                            // R
  Scalar center_height;                     // z0 = -R cos(theta)
  Scalar contact_radius;                    // rho0 = R sin(theta)
  Scalar apex_height;                       // h0 = R (1 - cos(theta))
  Scalar base_offset;                       // d = R - z0 = R (1 + cos(theta))
  std::optional<Scalar> equatorial_radius;  // rho1 = R, only when theta > pi/2
};

// Young relation: cos(theta) = adhesion / surface_tension - 1. Outside
// adhesion in [0, 2 * surface_tension] no equilibrium contact angle exists.
template <class Scalar>
Scalar contact_angle_from_adhesion(Scalar adhesion, Scalar surface_tension) {
  if (!(surface_tension > Scalar(0)))
    throw invalid_parameter("contact_angle_from_adhesion: surface tension must be positive");
  if (!(adhesion >= Scalar(0) && adhesion <= Scalar(2) * surface_tension))
    throw degenerate_geometry(
        "contact_angle_from_adhesion: adhesion " + std::to_string(double(adhesion)) +
        " outside [0, 2*surface_tension], no equilibrium contact angle");
  const Scalar c = adhesion / surface_tension - Scalar(1);
  return std::acos(std::clamp(c, Scalar(-1), Scalar(1)));
}

// V = (pi/3) R^3 (1 - cos theta)^2 (2 + cos theta); theta in [0, pi] allowed
// here since the formula itself is regular at both ends.
template <class Scalar>
Scalar cap_volume(Scalar radius, Scalar contact_angle) {
  if (!(radius > Scalar(0)))
    throw invalid_parameter("cap_volume: radius must be positive");
  if (!(contact_angle >= Scalar(0) && contact_angle <= pi<Scalar>))
    throw invalid_parameter("cap_volume: contact angle must lie in [0, pi]");
  const Scalar c = std::cos(contact_angle);
  return pi<Scalar> / Scalar(3) * radius * radius * radius *
         (Scalar(1) - c) * (Scalar(1) - c) * (Scalar(2) + c);
}

// Closed-form inversion of cap_volume for the cap radius.
template <class Scalar>
SphericalCap<Scalar> solve_sphere(const DropSpec<Scalar>& drop,
                                  Scalar angle_guard = default_angle_guard<Scalar>) {
  validate(drop, angle_guard);
  const Scalar c = std::cos(drop.contact_angle);
  const Scalar shape = (Scalar(1) - c) * (Scalar(1) - c) * (Scalar(2) + c);
  SphericalCap<Scalar> cap;
  cap.radius = std::cbrt(Scalar(3) * drop.volume / (pi<Scalar> * shape));
  cap.center_height = -cap.radius * c;
  cap.contact_radius = cap.radius * std::sin(drop.contact_angle);
  cap.apex_height = cap.radius * (Scalar(1) - c);
  cap.base_offset = cap.radius * (Scalar(1) + c);
  if (drop.contact_angle > pi<Scalar> / Scalar(2))
    cap.equatorial_radius = cap.radius;
  return cap;
}

// Dimensionless gravity-to-capillarity ratio lambda = V^(2/3) density g / gamma.
// The first-order correction is accurate for lambda well below 1.
template <class Scalar>
Scalar bond_number(const DropSpec<Scalar>& drop, const FluidParams<Scalar>& fluid) {
  validate(fluid);
  if (!(drop.volume > Scalar(0)))
    throw invalid_parameter("bond_number: volume must be positive");
  return std::cbrt(drop.volume * drop.volume) * fluid.density * fluid.gravity /
         fluid.surface_tension;
}

}  // namespace dropshape
