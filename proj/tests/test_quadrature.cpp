#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ibody/errors.hpp"
#include "ibody/quadrature.hpp"

using namespace ibody;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;

// Independent oracle for the weighted monomial integrals via the Beta
// function: int_0^x t^p (x^2 - t^2)^q dt
//   = x^{p+2q+1} * Gamma((p+1)/2) Gamma(q+1) / (2 Gamma((p+3)/2 + q)).
double beta_oracle(int p, int q, double x) {
  const double lg = std::lgamma(0.5 * (p + 1)) + std::lgamma(q + 1.0) -
                    std::lgamma(0.5 * (p + 3) + q);
  return std::pow(x, p + 2 * q + 1) * 0.5 * std::exp(lg);
}
}  // namespace

TEST_CASE("sphere surface areas match the Gamma closed form") {
  CHECK(sphere_surface_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(sphere_surface_area(4) ==
        doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(sphere_surface_area(5) ==
        doctest::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-14));
  CHECK(sphere_surface_area(7) ==
        doctest::Approx(16.0 * std::pow(kPi, 3) / 15.0).epsilon(1e-14));
}

TEST_CASE("ball volumes match the Gamma closed form") {
  CHECK(ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(ball_volume(5) ==
        doctest::Approx(8.0 * kPi * kPi / 15.0).epsilon(1e-14));
}

TEST_CASE("n * ball_volume(n) == sphere_surface_area(n) for n = 1..20") {
  for (int n = 1; n <= 20; ++n)
    CHECK(n * ball_volume(n) ==
          doctest::Approx(sphere_surface_area(n)).epsilon(1e-13));
}

TEST_CASE("spec validation rejects inconsistent knobs") {
  QuadratureSpec bad_nodes;
  bad_nodes.panel_nodes = 1;
  CHECK_THROWS_AS(bad_nodes.validate(), std::domain_error);
  QuadratureSpec bad_tol;
  bad_tol.abs_tol = 0.0;
  bad_tol.rel_tol = 0.0;
  CHECK_THROWS_AS(bad_tol.validate(), std::domain_error);
  QuadratureSpec bad_panels;
  bad_panels.max_panels = 0;
  CHECK_THROWS_AS(bad_panels.validate(), std::domain_error);
}

TEST_CASE("plain adaptive integral handles breakpoints") {
  QuadratureSpec spec;
  auto kinked = [](double t) { return std::abs(t - 0.3); };
  const std::vector<double> breaks{0.3};
  const double got = integrate(kinked, 0.0, 1.0, spec, breaks);
  // int |t - 0.3| dt over [0,1] = 0.3^2/2 + 0.7^2/2.
  CHECK(got == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-12));
}

TEST_CASE("weighted integral: unit weight examples") {
  QuadratureSpec spec;
  auto one = [](double) { return 1.0; };
  // alpha = 1/2, x = 1: quarter circle area.
  CHECK(integrate_weighted(one, 0.0, 1.0, 1.0, 0.5, spec) ==
        doctest::Approx(kPi / 4.0).epsilon(1e-12));
  // alpha = 1: (2/3) x^3.
  for (double x : {0.25, 0.7, 1.0})
    CHECK(integrate_weighted(one, 0.0, x, x, 1.0, spec) ==
          doctest::Approx(2.0 * x * x * x / 3.0).epsilon(1e-12));
  // alpha = -1/2: arcsine weight integrates to pi/2.
  CHECK(integrate_weighted(one, 0.0, 1.0, 1.0, -0.5, spec) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("weighted integral matches the Beta oracle on monomials") {
  QuadratureSpec spec;
  for (int p : {0, 1, 2})
    for (int q : {0, 1, 2})
      for (double x : {0.25, 0.5, 1.0}) {
        auto mono = [p](double t) { return std::pow(t, p); };
        const double got =
            integrate_weighted(mono, 0.0, x, x, (double)q, spec);
        CHECK(got == doctest::Approx(beta_oracle(p, q, x)).epsilon(1e-12));
      }
}

TEST_CASE("weighted integral with interior formula change") {
  QuadratureSpec spec;
  // Piecewise integrand with a kink at t = 0.5; compare against the sum of
  // the two smooth halves integrated separately.
  auto g = [](double t) { return t < 0.5 ? 1.0 : 2.0 * t; };
  const std::vector<double> breaks{0.5};
  const double whole = integrate_weighted(g, 0.0, 0.9, 0.9, 1.0, spec, breaks);
  auto one = [](double) { return 1.0; };
  auto lin = [](double t) { return 2.0 * t; };
  const double left = integrate_weighted(one, 0.0, 0.5, 0.9, 1.0, spec);
  const double right = integrate_weighted(lin, 0.5, 0.9, 0.9, 1.0, spec);
  CHECK(whole == doctest::Approx(left + right).epsilon(1e-11));
}

TEST_CASE("scaled weighted integral is stable as x -> 0") {
  QuadratureSpec spec;
  auto one = [](double) { return 1.0; };
  // Scaled value is the Wallis integral int_0^{pi/2} cos^{2a+1}, independent
  // of x; check at x = 1 and x = 1e-8.
  const double w1 = integrate_weighted_scaled(one, 0.0, 1.0, 1.0, 1.0, spec);
  const double w2 =
      integrate_weighted_scaled(one, 0.0, 1e-8, 1e-8, 1.0, spec);
  CHECK(w1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(w2 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("precondition violations throw domain errors") {
  QuadratureSpec spec;
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(integrate_weighted(one, 0.5, 0.4, 1.0, 1.0, spec),
                  std::domain_error);
  CHECK_THROWS_AS(integrate_weighted(one, 0.0, 1.1, 1.0, 1.0, spec),
                  std::domain_error);
  CHECK_THROWS_AS(integrate_weighted(one, 0.0, 1.0, 1.0, -0.25, spec),
                  std::domain_error);
}

TEST_CASE("panel budget exhaustion raises accuracy_error with estimate") {
  QuadratureSpec spec;
  spec.max_panels = 4;
  spec.panel_nodes = 2;
  auto rough = [](double t) { return std::sin(500.0 * t * t); };
  try {
    integrate(rough, 0.0, 3.0, spec);
    FAIL("expected accuracy_error");
  } catch (const accuracy_error& e) {
    CHECK(e.achieved() > 0.0);
  }
}
