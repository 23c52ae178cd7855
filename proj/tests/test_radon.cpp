#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ibody/corpus.hpp"
#include "ibody/errors.hpp"
#include "ibody/expr.hpp"
#include "ibody/profile.hpp"
#include "ibody/quadrature.hpp"
#include "ibody/radon.hpp"

using namespace ibody;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSeam = 1.0 / std::sqrt(2.0);

double beta_fn(double a, double b) {
  return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
}

double falling(int k, int j) {
  double v = 1.0;
  for (int i = 0; i < j; ++i) v *= k - i;
  return v;
}

// Transform of the monomial density F(t) = t^k in dimension n.  Direct
// Euler-integral evaluation: int_0^x t^k (x^2-t^2)^{(n-4)/2} dt
// = x^{k+n-3} B((k+1)/2, (n-2)/2) / 2, so t^k is an eigenfunction and the
// whole transform multiplies it by this constant.
double monomial_eigenvalue(int n, int k) {
  return sphere_surface_area(n - 2) / (n - 1.0) *
         beta_fn((k + 1) / 2.0, (n - 2) / 2.0);
}

}  // namespace

TEST_CASE("local inverse coefficients match hand-reduced closed forms") {
  auto c4 = local_inverse_terms(4);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0] == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-14));
  CHECK(c4[1] == doctest::Approx(3.0 / (4.0 * kPi)).epsilon(1e-14));

  auto c6 = local_inverse_terms(6);
  REQUIRE(c6.size() == 3);
  const double s6 = 5.0 / (8.0 * kPi * kPi);
  CHECK(c6[0] == doctest::Approx(3.0 * s6).epsilon(1e-14));
  CHECK(c6[1] == doctest::Approx(5.0 * s6).epsilon(1e-14));
  CHECK(c6[2] == doctest::Approx(1.0 * s6).epsilon(1e-14));

  auto c8 = local_inverse_terms(8);
  REQUIRE(c8.size() == 4);
  const double s8 = 7.0 / (16.0 * kPi * kPi * kPi);
  CHECK(c8[0] == doctest::Approx(15.0 * s8).epsilon(1e-14));
  CHECK(c8[1] == doctest::Approx(33.0 * s8).epsilon(1e-14));
  CHECK(c8[2] == doctest::Approx(12.0 * s8).epsilon(1e-14));
  CHECK(c8[3] == doctest::Approx(1.0 * s8).epsilon(1e-14));
}

TEST_CASE("local inverse is the exact inverse on monomial eigenfunctions") {
  // Forward sends t^k to lambda_{n,k} x^k; the inverse operator applied to
  // x^k gives x^k sum_j c_j k(k-1)...(k-j+1), so the sum must be
  // 1/lambda_{n,k}.  This pins every coefficient (Vandermonde in k)
  // against an independent Beta-integral evaluation.
  for (int n : {4, 6, 8, 10}) {
    auto c = local_inverse_terms(n);
    for (int k = 0; k <= 5; ++k) {
      double applied = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        applied += c[j] * falling(k, int(j));
      }
      CHECK(applied * monomial_eigenvalue(n, k) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("constant term of the inverse is the reciprocal ball volume") {
  for (int n : {4, 6, 8, 10}) {
    CHECK(local_inverse_terms(n)[0] * ball_volume(n - 1) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("transform of the ball is the scaled ball") {
  for (int n : {4, 6}) {
    auto K = intersection_body(corpus_body("ball", n));
    const double kappa = ball_volume(n - 1);
    CHECK(K.pole == doctest::Approx(kappa).epsilon(1e-14));
    for (std::size_t i = 0; i < K.grid.size(); ++i) {
      CHECK(K.values[i] == doctest::Approx(kappa).epsilon(1e-10));
    }
    for (double x : {0.0, 0.2, 0.55, 0.99}) {
      CHECK(K.eval(x) == doctest::Approx(kappa).epsilon(1e-10));
    }
  }
}

TEST_CASE("transform of the generated barrel matches its closed form") {
  // The degree-3 barrel generator was built so that its transform in
  // dimension 4 is the barrel body: sec(phi) near the pole, 2 sin(phi)
  // near the equator, i.e. 1/sqrt(1-x^2) for x < 1/sqrt(2) and 2x above.
  auto K = intersection_body(corpus_body("barrel_gen4", 4));
  auto oracle = [](double x) {
    return x < kSeam ? 1.0 / std::sqrt(1.0 - x * x) : 2.0 * x;
  };
  for (std::size_t i = 0; i < K.grid.size(); ++i) {
    CHECK(K.values[i] ==
          doctest::Approx(oracle(K.grid[i])).epsilon(5e-9));
  }
  CHECK(K.eval(0.5) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-8));
  CHECK(K.eval(0.9) == doctest::Approx(1.8).epsilon(1e-8));
  CHECK(K.pole == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 1; i <= 40; ++i) {
    const double x = i / 41.0;
    CHECK(K.eval(x) == doctest::Approx(oracle(x)).epsilon(2e-8));
  }
}

TEST_CASE("transform grid picks up breakpoint images") {
  auto K = intersection_body(corpus_body("cylinder", 4));
  bool found = false;
  for (double x : K.grid) {
    if (std::abs(x - kSeam) <= 1e-12) found = true;
  }
  CHECK(found);
  CHECK(K.fit_x.breakpoints().size() == 1);
  CHECK(K.fit_x.breakpoints()[0] == doctest::Approx(kSeam).epsilon(1e-15));
}

TEST_CASE("fit limit at zero reproduces the pole for the whole corpus") {
  for (const auto& name : corpus_names()) {
    for (int n : {4, 6}) {
      auto L = corpus_body(name, n);
      auto K = intersection_body(L);
      const double pole = ball_volume(n - 1) * std::pow(L.profile(0.0), n - 1);
      INFO(name, " n=", n);
      CHECK(std::abs(K.fit_x(0.0) - pole) <= 1e-6 * std::max(1.0, pole));
      CHECK(K.pole == doctest::Approx(pole).epsilon(1e-13));
    }
  }
}

TEST_CASE("transform is (n-1)-homogeneous in the profile") {
  auto base = corpus_body("double_cone", 4);
  auto K0 = intersection_body(base);
  for (double lambda : {0.5, 2.0}) {
    BodyOfRevolution scaled(4, scale_profile(base.profile, lambda));
    auto K1 = intersection_body(scaled);
    const double factor = std::pow(lambda, 3.0);
    REQUIRE(K1.grid.size() == K0.grid.size());
    for (std::size_t i = 0; i < K0.grid.size(); ++i) {
      CHECK(K1.values[i] ==
            doctest::Approx(factor * K0.values[i]).epsilon(1e-9));
    }
    // Fit-based evaluation is coarser: the profile's square-root behavior
    // at t = 1 caps the fit accuracy on the last cell.
    for (double x : {0.15, 0.5, kSeam + 0.1, 0.95}) {
      CHECK(K1.eval(x) ==
            doctest::Approx(factor * K0.eval(x)).epsilon(1e-7));
    }
  }
}

TEST_CASE("transform is monotone in the profile") {
  // The double cone sits inside the cylinder, so its sections are smaller.
  auto Kdc = intersection_body(corpus_body("double_cone", 4));
  auto Kcyl = intersection_body(corpus_body("cylinder", 4));
  for (double x : {0.1, 0.4, 0.8, 1.0}) {
    CHECK(Kdc.eval(x) < Kcyl.eval(x));
  }
}

TEST_CASE("inverse of the barrel body recovers the generating density") {
  auto dens = inverse_density(corpus_body("barrel_B", 4));
  CHECK(dens.n == 4);
  CHECK(dens.atoms.empty());
  // Closed forms: F(t) = 3t/pi above the seam, (3/(4pi))(1-t^2)^{-3/2} below.
  CHECK(dens.F(0.9) == doctest::Approx(2.7 / kPi).epsilon(1e-12));
  CHECK(dens.F(0.5) ==
        doctest::Approx(3.0 / (4.0 * kPi) * std::pow(0.75, -1.5))
            .epsilon(1e-12));
  // Continuous at the seam with a derivative jump of -6/pi.
  CHECK(dens.F.jump(kSeam, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dens.F.jump(kSeam, 1) == doctest::Approx(-6.0 / kPi).epsilon(1e-10));
}

TEST_CASE("inverse of the ball is the constant reciprocal ball volume") {
  for (int n : {4, 6, 8}) {
    auto dens = inverse_density(corpus_body("ball", n));
    for (double t : {0.0, 0.33, 0.8, 1.0}) {
      CHECK(dens.F(t) ==
            doctest::Approx(1.0 / ball_volume(n - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("round trip through transform and inverse recovers the density") {
  for (const char* name : {"ball", "barrel_gen4", "smooth_Ltilde"}) {
    for (int n : {4, 6}) {
      auto L = corpus_body(name, n);
      auto K = intersection_body(L);
      auto rec = inverse_density(K);
      auto truth = density_of(L);
      for (int i = 0; i <= 60; ++i) {
        const double t = 0.05 + 0.9 * i / 60.0;
        bool near_break = false;
        for (double b : truth.F.breakpoints()) {
          if (std::abs(t - b) < 0.04) near_break = true;
        }
        if (near_break) continue;
        INFO(name, " n=", n, " t=", t);
        CHECK(std::abs(rec.F(t) - truth.F(t)) <=
              1e-5 * std::max(1.0, std::abs(truth.F(t))));
      }
    }
  }
}

TEST_CASE("transform result converts to a body in the t variable") {
  auto K = intersection_body(corpus_body("barrel_gen4", 4));
  auto B = K.as_body();
  CHECK(B.n == 4);
  // rho(t) = K(x) at x = sqrt(1-t^2): 2 sqrt(1-t^2) below the seam, 1/t above.
  CHECK(B.profile(0.3) == doctest::Approx(2.0 * std::sqrt(0.91)).epsilon(1e-7));
  CHECK(B.profile(0.9) == doctest::Approx(1.0 / 0.9).epsilon(1e-7));
  CHECK(B.profile.breakpoints().size() == 1);
  CHECK(B.profile.breakpoints()[0] == doctest::Approx(kSeam).epsilon(1e-12));
}

TEST_CASE("density of a body raises the profile to the n-1 power") {
  auto dens = density_of(corpus_body("barrel_gen4", 4));
  CHECK(dens.F(0.9) == doctest::Approx(2.7 / kPi).epsilon(1e-13));
  CHECK(dens.F(0.5) ==
        doctest::Approx(3.0 / (4.0 * kPi) * std::pow(0.75, -1.5))
            .epsilon(1e-13));
  CHECK(dens.atoms.empty());
}

TEST_CASE("atoms transform by the closed-form kernel") {
  std::vector<Piece> zero(1);
  zero[0].lo = 0.0;
  zero[0].hi = 1.0;
  zero[0].expr = expr_constant(0.0);
  PiecewiseProfile none(zero, /*is_signed=*/true);

  GeneratingDensity d4(4, none, {{0.5, 2.0}});
  CHECK(transform_density_value(d4, 0.4) == doctest::Approx(0.0).epsilon(1e-15));
  // n = 4 kernel: w * 2 omega_2 / (3 x) = 4 pi w / (3 x).
  CHECK(transform_density_value(d4, 0.6) ==
        doctest::Approx(8.0 * kPi / 1.8).epsilon(1e-12));
  CHECK(transform_density_value(d4, 0.9) ==
        doctest::Approx(8.0 * kPi / 2.7).epsilon(1e-12));

  GeneratingDensity d6(6, none, {{0.5, 1.0}});
  // n = 6 kernel: w * 2 omega_4 / (5 x^3) * (x^2 - t0^2), omega_4 = 2 pi^2.
  const double x = 0.8;
  CHECK(transform_density_value(d6, x) ==
        doctest::Approx(4.0 * kPi * kPi / 5.0 * (x * x - 0.25) / (x * x * x))
            .epsilon(1e-12));

  // Without atoms the density transform matches the body transform.
  auto L = corpus_body("barrel_gen4", 4);
  auto K = intersection_body(L);
  auto dens = density_of(L);
  for (double p : {0.3, 0.76}) {
    CHECK(transform_density_value(dens, p) ==
          doctest::Approx(K.eval(p)).epsilon(1e-9));
  }
}

TEST_CASE("generating density validates atoms") {
  auto F = density_of(corpus_body("ball", 4)).F;
  CHECK_NOTHROW(GeneratingDensity(4, F, {{0.5, -1.0}, {0.25, 2.0}}));
  GeneratingDensity sorted(4, F, {{0.5, -1.0}, {0.25, 2.0}});
  CHECK(sorted.atoms[0].t0 == 0.25);
  CHECK_THROWS_AS(GeneratingDensity(4, F, {{0.0, 1.0}}), schema_error);
  CHECK_THROWS_AS(GeneratingDensity(4, F, {{1.0, 1.0}}), schema_error);
  CHECK_THROWS_AS(GeneratingDensity(4, F, {{0.5, 1.0}, {0.5, 2.0}}),
                  schema_error);
  CHECK_THROWS_AS(GeneratingDensity(2, F), std::domain_error);
}

TEST_CASE("dimension guards") {
  CHECK_THROWS_AS(intersection_body(corpus_body("ball", 3)),
                  std::domain_error);
  CHECK_THROWS_AS(local_inverse_terms(5), unsupported_error);
  CHECK_THROWS_AS(local_inverse_terms(2), unsupported_error);
  CHECK_THROWS_AS(inverse_density(corpus_body("ball", 5)), unsupported_error);
  CHECK_THROWS_AS(inverse_density(corpus_body("ball", 12)), unsupported_error);
}

TEST_CASE("transform rejects grid points outside the domain") {
  auto L = corpus_body("ball", 4);
  CHECK_THROWS_AS(intersection_body(L, {}, {0.0, 0.5}), std::domain_error);
  CHECK_THROWS_AS(intersection_body(L, {}, {0.5, 1.5}), std::domain_error);
}
