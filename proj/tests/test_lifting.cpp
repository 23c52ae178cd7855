#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ibody/corpus.hpp"
#include "ibody/errors.hpp"
#include "ibody/lifting.hpp"
#include "ibody/profile.hpp"
#include "ibody/radon.hpp"

using namespace ibody;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSeam = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("ball density lifts to the constant 5/(2 pi)") {
  auto d4 = density_of(corpus_body("ball", 4));
  auto d6 = lift(d4);
  CHECK(d6.n == 6);
  CHECK(d6.atoms.empty());
  for (double t : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(d6.F(t) == doctest::Approx(5.0 / (2.0 * kPi)).epsilon(1e-14));
  }
  auto f6 = generator(d6);
  const double expected = std::pow(5.0 / (2.0 * kPi), 0.2);
  CHECK(f6(0.4) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(generator_body(d6).n == 6);
}

TEST_CASE("barrel density chain matches closed forms through dimension 8") {
  auto d4 = density_of(corpus_body("barrel_gen4", 4));
  CHECK(d4.F(0.9) == doctest::Approx(2.7 / kPi).epsilon(1e-13));

  auto d6 = lift(d4);
  CHECK(d6.n == 6);
  CHECK(d6.atoms.empty());
  // F6 = 10t/pi^2 above the seam, (15/(8 pi^2)) (1-t^2)^{-5/2} below.
  CHECK(d6.F(0.9) == doctest::Approx(9.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(d6.F(0.3) ==
        doctest::Approx(15.0 / (8.0 * kPi * kPi) * std::pow(0.91, -2.5))
            .epsilon(1e-12));
  const double jump6 = -5.0 * std::sqrt(2.0) / (2.0 * kPi * kPi);
  CHECK(d6.F.jump(kSeam, 0) == doctest::Approx(jump6).epsilon(1e-12));

  auto d8 = lift(d6);
  CHECK(d8.n == 8);
  REQUIRE(d8.atoms.size() == 1);
  CHECK(d8.atoms[0].t0 == doctest::Approx(kSeam).epsilon(1e-14));
  const double pi3 = kPi * kPi * kPi;
  CHECK(d8.atoms[0].weight == doctest::Approx(-7.0 / (4.0 * pi3)).epsilon(1e-12));
  // Continuous parts: 42t/pi^3 above, (105/(16 pi^3)) (1-t^2)^{-7/2} below.
  CHECK(d8.F(0.9) == doctest::Approx(37.8 / pi3).epsilon(1e-12));
  for (double t : {0.2, 0.45, 0.65}) {
    CHECK(d8.F(t) * std::pow(1.0 - t * t, 3.5) ==
          doctest::Approx(105.0 / (16.0 * pi3)).epsilon(1e-10));
  }
  const double slope = (d8.F(0.95) - d8.F(0.75)) / 0.2;
  CHECK(slope == doctest::Approx(42.0 / pi3).epsilon(1e-10));
  CHECK(d8.atoms[0].weight / slope ==
        doctest::Approx(-1.0 / 24.0).epsilon(1e-9));

  CHECK_THROWS_AS(lift(d8), unsupported_error);
}

TEST_CASE("transforming the lifted generator reproduces the section function") {
  {
    auto b6 = generator_body(lift(density_of(corpus_body("ball", 4))));
    auto K6 = intersection_body(b6);
    for (double v : K6.values) {
      CHECK(std::abs(v - 4.0 * kPi / 3.0) <= 1e-5);
    }
  }
  {
    auto b6 = generator_body(lift(density_of(corpus_body("barrel_gen4", 4))));
    auto K6 = intersection_body(b6);
    for (std::size_t i = 0; i < K6.grid.size(); ++i) {
      const double x = K6.grid[i];
      const double oracle = x < kSeam ? 1.0 / std::sqrt(1.0 - x * x) : 2.0 * x;
      CHECK(std::abs(K6.values[i] - oracle) <= 1e-5);
    }
  }
}

TEST_CASE("a density with an atom still transforms back to the sections") {
  // Two lifts of the dimension-4 barrel density give a dimension-8 density
  // whose profile part is signed-continuous plus a negative atom at the seam.
  // Its transform must reproduce the same section function 1/sqrt(1-x^2)|2x,
  // which pins the atom kernel and the lift normalization jointly.
  auto d8 = lift(lift(density_of(corpus_body("barrel_gen4", 4))));
  REQUIRE(d8.n == 8);
  REQUIRE(d8.atoms.size() == 1);
  for (double x : {0.1, 0.3, 0.5, kSeam, 0.8, 0.9, 0.99}) {
    const double oracle = x <= kSeam ? 1.0 / std::sqrt(1.0 - x * x) : 2.0 * x;
    CHECK(transform_density_value(d8, x) ==
          doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("equator convexity verdicts across the corpus") {
  for (const char* name :
       {"ball", "cylinder", "double_cone", "cylinder_capped", "barrel_B",
        "barrel_gen4"}) {
    INFO(name);
    CHECK(is_equator_convex(corpus_body(name, 4).profile).convex);
  }

  auto diabolo = is_equator_convex(corpus_body("diabolo_L", 4).profile);
  CHECK_FALSE(diabolo.convex);
  CHECK(diabolo.witness >= kSeam - 1e-12);
  CHECK(diabolo.witness < 1.0);

  auto smooth = is_equator_convex(corpus_body("smooth_Ltilde", 4).profile);
  CHECK_FALSE(smooth.convex);
  // Direct monotonicity counterexample for the smooth profile.
  auto f = corpus_body("smooth_Ltilde", 4).profile;
  CHECK(0.6 * f(0.6) > 0.7 * f(0.7));

  // The dimension-8 barrel density profile drops at the seam, so t f(t)
  // decreases there even though both one-sided slopes are fine.
  auto l8 = is_equator_convex(corpus_body("barrel_L8", 8).profile);
  CHECK_FALSE(l8.convex);
  CHECK(l8.witness == doctest::Approx(kSeam).epsilon(1e-12));
}

TEST_CASE("profile form and density form of the lift agree") {
  std::mt19937 rng(20240718);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (const char* name : {"ball", "double_cone", "barrel_gen4", "cylinder"}) {
    for (int n : {4, 6}) {
      auto L = corpus_body(name, n);
      auto dens = density_of(L);
      for (int trial = 0; trial < 100; ++trial) {
        const double t = dist(rng);
        bool near_break = false;
        for (double b : L.profile.breakpoints()) {
          if (std::abs(t - b) < 1e-3) near_break = true;
        }
        if (near_break) continue;
        const double fv = L.profile(t);
        const double fd = L.profile.derivative_at(t, 1);
        const double lhs =
            std::pow(fv, n - 2) * (fv + t * fd) / (2.0 * kPi);
        const double Fv = dens.F(t);
        const double Fd = dens.F.derivative_at(t, 1);
        const double rhs = (Fv + t * Fd / (n - 1.0)) / (2.0 * kPi);
        INFO(name, " n=", n, " t=", t);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("convexity matches the sign of the lifted continuous part") {
  // Value-continuous profiles only: a profile jump turns into an atom, not
  // into a sign change of the continuous part.
  for (const char* name :
       {"ball", "cylinder", "double_cone", "cylinder_capped", "diabolo_L",
        "smooth_Ltilde", "barrel_B", "barrel_gen4"}) {
    auto L = corpus_body(name, 4);
    const bool convex = is_equator_convex(L.profile).convex;
    auto lifted = lift(density_of(L));
    const double mn = lifted.F.min_value();
    INFO(name, " min=", mn);
    CHECK(convex == (mn >= -1e-9));
  }
}

TEST_CASE("generator rejects sign-changing and distributional densities") {
  auto lifted = lift(density_of(corpus_body("diabolo_L", 4)));
  CHECK(lifted.F(0.2) > 0.0);
  CHECK(lifted.F.min_value() < 0.0);
  bool threw = false;
  try {
    generator(lifted);
  } catch (const not_star_body_error& e) {
    threw = true;
    CHECK(e.witness() > kSeam - 1e-12);
    CHECK(e.witness() <= 1.0);
  }
  CHECK(threw);

  auto with_atom = GeneratingDensity(
      6, density_of(corpus_body("ball", 6)).F, {{0.5, 1.0}});
  CHECK_THROWS_AS(generator(with_atom), unsupported_error);
  CHECK_THROWS_AS(lift(with_atom), unsupported_error);
}

TEST_CASE("cylinder density lift is flat on the outer branch") {
  // F = t^{-3} has t F'/3 = -t^{-3}: the lift cancels exactly, matching the
  // constant section function of the cylinder over the outer range.
  auto d6 = lift(density_of(corpus_body("cylinder", 4)));
  CHECK(d6.atoms.empty());
  CHECK(d6.F(0.9) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(d6.F(0.75) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(d6.F(0.3) ==
        doctest::Approx(5.0 / (2.0 * kPi) * std::pow(0.91, -2.5))
            .epsilon(1e-12));
}

TEST_CASE("verdicts for the next dimension") {
  using V = NextDimensionVerdict;
  CHECK(verdict_next_dimension(corpus_body("ball", 4)) ==
        V::IntersectionBodyOfStarBody);
  CHECK(verdict_next_dimension(corpus_body("barrel_B", 4)) ==
        V::IntersectionBodyOfStarBody);
  CHECK(verdict_next_dimension(corpus_body("barrel_gen4", 4)) ==
        V::IntersectionBodyOnly);
  CHECK(verdict_next_dimension(corpus_body("cylinder", 4)) ==
        V::IntersectionBodyOnly);
  CHECK(verdict_next_dimension(corpus_body("diabolo_L", 4)) ==
        V::NotIntersectionBody);
  CHECK(verdict_next_dimension(corpus_body("smooth_Ltilde", 4)) ==
        V::NotIntersectionBody);
  CHECK(std::string(to_string(V::IntersectionBodyOfStarBody)) ==
        "intersection_body_of_star_body");
  CHECK(std::string(to_string(V::NotIntersectionBody)) ==
        "not_intersection_body");
}
