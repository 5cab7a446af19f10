#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "dropshape/core.hpp"
#include "dropshape/perturbation.hpp"
#include "dropshape/profile.hpp"

using Catch::Approx;
using namespace dropshape;

namespace {

const FluidParams<double> water{1.0, 72.0, 980.7};
const FluidParams<double> mercury{13.55, 476.0, 980.7};

const DropSpec<double> water_1{6.75e-3, radians(72.0)};
const DropSpec<double> water_2{13.5e-3, radians(71.3)};
const DropSpec<double> water_3{20.25e-3, radians(71.2)};
const DropSpec<double> pmma{0.1234, radians(73.44)};
const FluidParams<double> water_pmma{1.0, 70.6, 980.7};

const DropSpec<double> mercury_1{0.370e-3, radians(131.1)};
const DropSpec<double> mercury_3{4.830e-3, radians(132.6)};

FluidParams<double> scaled_gravity(const FluidParams<double>& fluid, double factor) {
  FluidParams<double> out = fluid;
  out.gravity *= factor;
  return out;
}

// adaptive Simpson, used to cross-check the analytic slope of the Cartesian
// correction against its value by quadrature
template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double eps, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson_rec(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

template <class F>
double integrate(F f, double a, double b, double eps) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return simpson_rec(f, a, b, fa, fm, fb, eps, 40);
}

}  // namespace

TEST_CASE("first-order coefficients reproduce the frozen acute example") {
  const PerturbationCoefficients<double> k = coefficients(water_1, water);
  REQUIRE(k.bond == Approx(0.4864888).margin(1e-6));
  REQUIRE(k.contact_shift == Approx(0.0028858).margin(1e-6));
  REQUIRE(k.cap.contact_radius + k.contact_shift == Approx(0.1742200).margin(1e-6));
  REQUIRE(k.bond * f1_concave(0.0, k).value == Approx(-0.0048252).margin(1e-6));
  REQUIRE(observables(k).apex_height == Approx(0.1196564).margin(1e-6));
  REQUIRE_FALSE(k.beyond_small_bond());
}

TEST_CASE("coefficients degenerate cleanly at zero gravity") {
  for (const DropSpec<double>* drop : {&water_1, &mercury_1}) {
    const FluidParams<double> weightless{1.0, 72.0, 0.0};
    const PerturbationCoefficients<double> k = coefficients(*drop, weightless);
    REQUIRE(k.bond == 0.0);
    REQUIRE(k.contact_shift == 0.0);
    // the contact line's polar image sits at half the contact angle:
    // tan(theta0) = sin(t) / (1 + cos(t)) = tan(t / 2)
    REQUIRE(k.contact_polar_angle ==
            Approx(drop->contact_angle / 2).margin(1e-13));

    // with lambda = 0 the polar map retraces the sphere point for point
    const Eigen::Index n = 200;
    const ProfileSamples<double> flat = perturbed_profile(k, n);
    const ProfileSamples<double> cap = spherical_profile(k.cap, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      REQUIRE(flat.points(i, 0) == Approx(cap.points(i, 0)).margin(1e-12));
      REQUIRE(flat.points(i, 1) == Approx(cap.points(i, 1)).margin(1e-12));
    }
    REQUIRE(flat.observables.apex_height ==
            Approx(k.cap.apex_height).margin(1e-15));
  }
}

TEST_CASE("pressure constant equals -R/2 for a hemisphere") {
  const DropSpec<double> hemi{1e-3, pi<double> / 2};
  const PerturbationCoefficients<double> k = coefficients(hemi, water);
  REQUIRE(k.pressure_const == Approx(-k.cap.radius / 2).epsilon(1e-12));
}

TEST_CASE("Cartesian correction: slope, guard band and argument checks") {
  const PerturbationCoefficients<double> k = coefficients(water_1, water);
  const double R = k.cap.radius;

  REQUIRE(f1_concave(0.0, k).slope == 0.0);
  // the slope is O(rho) near the axis despite its two 1/rho pieces
  REQUIRE(std::abs(f1_concave(1e-12, k).slope) < 1e-9);

  REQUIRE_THROWS_AS(f1_concave(0.96 * R, k), divergence_guard);
  REQUIRE_NOTHROW(f1_concave(0.96 * R, k, 0.99));
  REQUIRE_THROWS_AS(f1_concave(-0.1, k), invalid_parameter);
  REQUIRE_THROWS_AS(f1_concave(0.1 * R, k, 0.0), invalid_parameter);
  REQUIRE_THROWS_AS(f1_concave(0.1 * R, k, 1.0), invalid_parameter);
}

TEST_CASE("Cartesian slope integrates back to the value") {
  const PerturbationCoefficients<double> k = coefficients(water_1, water);
  const double R = k.cap.radius;
  const auto slope = [&k](double rho) { return f1_concave(rho, k).slope; };
  const double by_quadrature = integrate(slope, 0.0, 0.5 * R, 1e-13);
  const double by_values = f1_concave(0.5 * R, k).value - f1_concave(0.0, k).value;
  REQUIRE(by_quadrature == Approx(by_values).margin(1e-9));
}

TEST_CASE("polar correction matches the Cartesian one on the axis") {
  for (const DropSpec<double>* drop : {&water_1, &mercury_1}) {
    const FluidParams<double>& fluid =
        drop == &water_1 ? water : mercury;
    const PerturbationCoefficients<double> k = coefficients(*drop, fluid);
    REQUIRE(r1_polar(0.0, k) ==
            Approx(f1_concave(0.0, k).value).epsilon(1e-13));
  }
}

TEST_CASE("polar correction at the equator image reduces to its axis term") {
  // cos(2 theta) vanishes at theta = pi/4, killing both logarithm terms
  const PerturbationCoefficients<double> k = coefficients(mercury_1, mercury);
  const double za = k.cap.center_height + k.pressure_const;
  const double expected = std::sqrt(2.0) * k.profile_scale *
                          (3 * za + 2 * k.cap.radius) / (6 * k.cap.radius);
  REQUIRE(r1_polar(pi<double> / 4, k) == Approx(expected).margin(1e-12));
}

TEST_CASE("polar correction rejects angles outside its chart") {
  const PerturbationCoefficients<double> k = coefficients(mercury_1, mercury);
  REQUIRE_THROWS_AS(r1_polar(-0.1, k), invalid_parameter);
  REQUIRE_THROWS_AS(r1_polar(pi<double> / 2, k), degenerate_geometry);
  REQUIRE_THROWS_AS(r1_polar(1.6, k), degenerate_geometry);
}

TEST_CASE("polar correction is smooth through the equator image") {
  const PerturbationCoefficients<double> k = coefficients(mercury_3, mercury);
  const int n = 10000;
  double prev = r1_polar(0.0, k);
  for (int i = 1; i <= n; ++i) {
    const double theta = k.contact_polar_angle * i / n;
    const double v = r1_polar(theta, k);
    REQUIRE(std::isfinite(v));
    // bounded increments: no pole or branch jump inside the chart
    REQUIRE(std::abs(v - prev) < 1e-3);
    prev = v;
  }
}

TEST_CASE("polar and Cartesian corrections describe the same curve") {
  // the same first-order meridian is written once as z = f0 + lambda f1(rho)
  // and once as r = 2R cos(theta) + lambda r1(theta); to first order the two
  // displacements are related through the sphere map rho = R sin(2 theta) by
  //   r1 cos(theta) = r1 sin(theta) f0'(rho) + f1(rho),  f0'(rho) = -rho / w
  const PerturbationCoefficients<double> k = coefficients(mercury_1, mercury);
  const double R = k.cap.radius;
  for (int i = 0; i <= 35; ++i) {
    const double theta = radians(double(i));
    const double rho = R * std::sin(2 * theta);
    const double w = std::sqrt(R * R - rho * rho);
    const double f0p = -rho / w;
    const double r1 = r1_polar(theta, k);
    const double f1 = f1_concave(rho, k, 0.995).value;
    CAPTURE(i);
    REQUIRE(r1 * std::cos(theta) ==
            Approx(r1 * std::sin(theta) * f0p + f1).margin(1e-12));
  }
}

TEST_CASE("both charts give the same perturbed height at small bond") {
  // at a tiny bond number the O(lambda^2) chart mismatch drops below the
  // tolerance and the heights must agree literally
  const FluidParams<double> faint = scaled_gravity(water, 1e-5);
  const PerturbationCoefficients<double> k = coefficients(water_1, faint);
  REQUIRE(k.bond < 1e-5);
  for (int i = 0; i <= 35; i += 5) {
    const double theta = radians(double(i));
    const double r = 2 * k.cap.radius * std::cos(theta) + k.bond * r1_polar(theta, k);
    const double rho = r * std::sin(theta);
    const double z_polar = r * std::cos(theta) - k.pole_offset;
    const double w = std::sqrt(k.cap.radius * k.cap.radius - rho * rho);
    const double z_cartesian =
        w + k.cap.center_height + k.bond * f1_concave(rho, k, 0.995).value;
    REQUIRE(z_polar == Approx(z_cartesian).margin(1e-10));
  }
}

TEST_CASE("first-order observables reproduce the frozen examples") {
  const DropObservables<double> acute = observables(coefficients(water_2, water));
  REQUIRE(acute.contact_radius == Approx(0.2228086).margin(1e-6));
  REQUIRE(acute.apex_height == Approx(0.1461422).margin(1e-6));
  REQUIRE_FALSE(acute.equatorial_radius);

  const DropObservables<double> acute3 = observables(coefficients(water_3, water));
  REQUIRE(acute3.contact_radius == Approx(0.2572807).margin(1e-6));
  REQUIRE(acute3.apex_height == Approx(0.1637311).margin(1e-6));

  const DropObservables<double> wide = observables(coefficients(pmma, water_pmma));
  REQUIRE(wide.contact_radius == Approx(0.5007198).margin(1e-6));

  const PerturbationCoefficients<double> km = coefficients(mercury_1, mercury);
  REQUIRE(km.bond == Approx(0.1438809).margin(1e-6));
  const DropObservables<double> obtuse = observables(km);
  REQUIRE(obtuse.equatorial_radius.has_value());
  REQUIRE(*obtuse.equatorial_radius == Approx(0.0462387).margin(1e-6));
  REQUIRE(obtuse.contact_radius == Approx(0.0356911).margin(1e-6));
  REQUIRE(*obtuse.apex_to_equator == Approx(0.0456208).margin(1e-6));

  // internal consistency of the equator quantities
  REQUIRE(*obtuse.apex_to_equator ==
          Approx(obtuse.apex_height - *obtuse.equator_height).margin(1e-15));
  REQUIRE(*obtuse.equator_height > 0.0);
  REQUIRE(*obtuse.equator_height < obtuse.apex_height);
}

TEST_CASE("gravity pushes every first-order observable the physical way") {
  for (const double deg : {20.0, 60.0, 95.0, 120.0, 160.0}) {
    for (const double lambda : {0.1, 0.3, 0.5}) {
      const DropSpec<double> drop{1e-2, radians(deg)};
      const double v23 = std::cbrt(drop.volume * drop.volume);
      const FluidParams<double> fluid{1.0, 72.0, lambda * 72.0 / v23};
      const PerturbationCoefficients<double> k = coefficients(drop, fluid);
      CAPTURE(deg, lambda);
      REQUIRE(k.bond == Approx(lambda).epsilon(1e-12));
      REQUIRE(k.contact_shift > 0.0);          // contact patch widens
      REQUIRE(k.pressure_const < 0.0);         // apex pressure drops
      REQUIRE(f1_concave(0.0, k).value < 0.0); // apex comes down

      const DropObservables<double> obs = observables(k);
      REQUIRE(obs.contact_radius > k.cap.contact_radius);
      REQUIRE(obs.apex_height < k.cap.apex_height);
      if (deg > 95.0) REQUIRE(*obs.equatorial_radius > k.cap.radius);
    }
  }
}

TEST_CASE("perturbed profile flattens a strongly loaded drop") {
  // bond of about 1.2: still finite and qualitatively right
  const DropSpec<double> drop{0.025, radians(125.0)};
  const FluidParams<double> fluid{1.0, 70.0, 980.0};
  const PerturbationCoefficients<double> k = coefficients(drop, fluid);
  REQUIRE(k.bond == Approx(1.197).margin(5e-3));
  REQUIRE(k.beyond_small_bond());

  const ProfileSamples<double> prof = perturbed_profile(k, 800);
  REQUIRE(prof.observables.apex_height < k.cap.apex_height);
  REQUIRE(*prof.observables.equatorial_radius > k.cap.radius);
  REQUIRE(prof.points(0, 0) == 0.0);
  REQUIRE(prof.points(0, 1) == Approx(prof.observables.apex_height).margin(1e-14));

  // the widest sampled radius can only exceed the closed-form equatorial
  // radius (which lies on the curve at theta = pi/4), and at this bond of
  // about 0.8 the excess is a genuine O(lambda^2 R) effect
  const PerturbationCoefficients<double> k3 = coefficients(mercury_3, mercury);
  const ProfileSamples<double> m3 = perturbed_profile(k3, 4000);
  const double rho1 = *m3.observables.equatorial_radius;
  REQUIRE(m3.points.col(0).maxCoeff() >= rho1 - 1e-9);
  REQUIRE(m3.points.col(0).maxCoeff() - rho1 <=
          0.2 * k3.bond * k3.bond * k3.cap.radius);

  REQUIRE_THROWS_AS(perturbed_profile(k, 8), invalid_parameter);
}

TEST_CASE("profile closure defects shrink as the bond squared") {
  // the last sample should miss the plane z = 0 by O(lambda^2) R; halving
  // gravity halves lambda, so the miss must shrink by about 4
  const auto last_z = [](const FluidParams<double>& fluid) {
    const PerturbationCoefficients<double> k = coefficients(mercury_1, fluid);
    const ProfileSamples<double> prof = perturbed_profile(k, 2000);
    return std::abs(prof.points(prof.points.rows() - 1, 1));
  };
  const PerturbationCoefficients<double> k = coefficients(mercury_1, mercury);
  const double z_full = last_z(mercury);
  const double z_half = last_z(scaled_gravity(mercury, 0.5));
  REQUIRE(z_full <= 0.05 * k.bond * k.bond * k.cap.radius);
  REQUIRE(z_full / z_half == Approx(4.0).margin(0.5));

  // volume enclosed by the first-order curve misses the prescribed volume by
  // O(lambda^2) V with the same quartering
  const auto volume_defect = [](const FluidParams<double>& fluid) {
    const PerturbationCoefficients<double> kk = coefficients(mercury_1, fluid);
    const ProfileSamples<double> prof = perturbed_profile(kk, 6000);
    return std::abs(volume_of_revolution(prof) - mercury_1.volume);
  };
  const double dv_full = volume_defect(mercury);
  const double dv_half = volume_defect(scaled_gravity(mercury, 0.5));
  REQUIRE(dv_full <= 0.5 * k.bond * k.bond * mercury_1.volume);
  REQUIRE(dv_full / dv_half == Approx(4.0).margin(1.0));
}

TEST_CASE("sampled equator sits where the closed form puts it") {
  const PerturbationCoefficients<double> k = coefficients(mercury_1, mercury);
  const ProfileSamples<double> prof = perturbed_profile(k, 20001);
  Eigen::Index arg = 0;
  prof.points.col(0).maxCoeff(&arg);
  // the widest point's polar angle stays within O(lambda) of pi/4
  REQUIRE(std::abs(prof.parameter[arg] - pi<double> / 4) < 0.5 * k.bond);
  // and its radius matches the first-order equatorial radius to O(lambda^2)
  REQUIRE(std::abs(prof.points(arg, 0) - *observables(k).equatorial_radius) <=
          0.2 * k.bond * k.bond * k.cap.radius);
}

TEST_CASE("sampled meridian meets the plane at the contact angle") {
  // one-sided second-order difference at the last sample; the defect of the
  // first-order curve is O(lambda^2) and quarters when gravity halves
  const auto angle_defect = [](const FluidParams<double>& fluid) {
    const PerturbationCoefficients<double> k = coefficients(mercury_1, fluid);
    const Eigen::Index n = 20001;
    const ProfileSamples<double> prof = perturbed_profile(k, n);
    const double dt = prof.parameter[n - 1] - prof.parameter[n - 2];
    const auto endpoint_slope = [&prof, n, dt](int col) {
      return (3 * prof.points(n - 1, col) - 4 * prof.points(n - 2, col) +
              prof.points(n - 3, col)) /
             (2 * dt);
    };
    const double phi = std::atan2(-endpoint_slope(1), endpoint_slope(0));
    return std::abs(phi - mercury_1.contact_angle);
  };
  const PerturbationCoefficients<double> k = coefficients(mercury_1, mercury);
  const double d_full = angle_defect(mercury);
  const double d_half = angle_defect(scaled_gravity(mercury, 0.5));
  REQUIRE(d_full <= 0.5 * k.bond * k.bond);
  REQUIRE(d_full / d_half == Approx(4.0).margin(1.0));
}

TEST_CASE("apex curvature closes the exact contact identity to first order") {
  // weightless: the identity is exact for the cap itself
  const SphericalCap<double> cap = solve_sphere(water_1);
  const FluidParams<double> weightless{1.0, 72.0, 0.0};
  REQUIRE(contact_identity_residual(cap_observables(cap), water_1, weightless,
                                    1.0 / cap.radius) < 1e-14);

  // with gravity the first-order pair (observables, kappa) leaves an
  // O(lambda^2) residual: quarter it by halving g
  const auto residual = [](const DropSpec<double>& drop,
                           const FluidParams<double>& fluid) {
    const PerturbationCoefficients<double> k = coefficients(drop, fluid);
    return contact_identity_residual(observables(k), drop, fluid,
                                     first_order_kappa(k, drop, fluid));
  };
  for (const DropSpec<double>* drop : {&water_1, &mercury_1}) {
    const FluidParams<double>& fluid = drop == &water_1 ? water : mercury;
    const double lambda = bond_number(*drop, fluid);
    const double r_full = residual(*drop, fluid);
    const double r_half = residual(*drop, scaled_gravity(fluid, 0.5));
    CAPTURE(drop->contact_angle);
    REQUIRE(r_full < lambda * lambda);
    REQUIRE(r_full / r_half == Approx(4.0).margin(0.6));
  }

  // weightless limit of the first-order curvature is the cap curvature
  const PerturbationCoefficients<double> k0 = coefficients(water_1, weightless);
  REQUIRE(first_order_kappa(k0, water_1, weightless) ==
          Approx(1.0 / k0.cap.radius).epsilon(1e-14));
}

TEST_CASE("coefficient computation validates its inputs") {
  REQUIRE_THROWS_AS(coefficients(water_1, FluidParams<double>{0.0, 72.0, 980.7}),
                    invalid_parameter);
  REQUIRE_THROWS_AS(coefficients(DropSpec<double>{-1.0, radians(72.0)}, water),
                    invalid_parameter);
  REQUIRE_THROWS_AS(coefficients(DropSpec<double>{1e-3, radians(179.95)}, water),
                    degenerate_geometry);
}
