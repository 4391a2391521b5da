#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geostable/errors.hpp"
#include "geostable/levy.hpp"
#include "geostable/specfun.hpp"

using namespace geostable;

TEST_CASE("inhomogeneous gamma Levy density") {
  const Curve b = Curve::piecewise_linear({{0.0, 1.0}, {1.0, 3.0}});
  CHECK(levy_gamma_inhom(b, 2.0, 0.5) == doctest::Approx(std::exp(-1.0) / 2.0));
  CHECK_THROWS_AS(levy_gamma_inhom(b, -1.0, 0.5), DomainError);
}

TEST_CASE("GS subordinator Levy density is the Mittag-Leffler closed form") {
  ParamCurves pc{Curve::constant(0.5), Curve::constant(-0.5), Curve::constant(2.0), 1.0, std::nullopt};
  for (double x : {0.01, 0.3, 1.0, 4.0, 25.0}) {
    // E_1/2(−y) = exp(y²) erfc(y), y = sqrt(x)/b
    const double y = std::sqrt(x) / 2.0;
    const double oracle = 0.5 / x * std::exp(y * y) * std::erfc(y);
    CHECK(levy_gs1_sub(pc, x, 0.0).value == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("Laplace exponent of the GS subordinator") {
  for (double a : {0.25, 0.6, 0.9})
    for (double b : {0.3, 1.7})
      for (double lam : {0.1, 1.0, 5.0})
        CHECK(laplace_exponent_check(a, b, lam) == doctest::Approx(-std::log1p(b * std::pow(lam, a))).epsilon(1e-8));
}

TEST_CASE("GS2 residue series against the subordination oracle") {
  const Curve b = Curve::constant(1.3);
  Gs2SeriesOptions strict;
  strict.allow_oracle_fallback = false;
  strict.accept_tol = 1e-7;
  struct P {
    double alpha, theta, x;
  };
  for (const auto& p : std::vector<P>{{0.7, 0.0, 0.4}, {0.7, 0.5, -2.0}, {1.5, 0.3, 0.8}, {1.5, -0.4, -5.0},
                                      {1.2, 0.0, 3.0}}) {
    const auto s = levy_gs2_series(p.alpha, p.theta, b, p.x, 0.0, strict);
    const auto o = levy_gs2_oracle(p.alpha, p.theta, b, p.x, 0.0);
    CHECK_MESSAGE(s.value == doctest::Approx(o.value).epsilon(1e-6),
                  "alpha " << p.alpha << " theta " << p.theta << " x " << p.x);
  }
}

TEST_CASE("GS2 Levy density between the two series regimes") {
  const Curve b = Curve::constant(0.8);
  for (double x : {-14.0, 9.0, 14.0}) {
    const auto s = levy_gs2_series(0.7, 0.25, b, x, 0.0);
    CHECK(s.method == "mellin_barnes");
    CHECK(s.value == doctest::Approx(levy_gs2_oracle(0.7, 0.25, b, x, 0.0).value).epsilon(1e-8));
  }
}

TEST_CASE("GS2 Levy density symmetries and the VG reduction") {
  const Curve b = Curve::constant(1.0);
  for (double x : {0.2, 1.0, 6.0}) {
    CHECK(levy_gs2_series(0.8, 0.0, b, x, 0.0).value ==
          doctest::Approx(levy_gs2_series(0.8, 0.0, b, -x, 0.0).value).epsilon(1e-12));
    // θ ↦ −θ mirrors the density
    CHECK(levy_gs2_series(1.4, 0.3, b, x, 0.0).value ==
          doctest::Approx(levy_gs2_series(1.4, -0.3, b, -x, 0.0).value).epsilon(1e-9));
    CHECK(levy_gs2_oracle(2.0, 0.0, b, x, 0.0).value == doctest::Approx(std::exp(-x) / x).epsilon(1e-8));
  }
  // totally skewed α < 1: no negative jumps
  CHECK(make_gs2_levy(0.6, -0.6, b)(-1.0, 0.0) == 0.0);
}

TEST_CASE("Levy integrability and the Levy-Khintchine exponent") {
  const Curve b = Curve::constant(0.8);
  const auto nu = make_gs2_levy(0.7, 0.2, b);
  const double integ = levy_integrability(nu, 0.0);
  CHECK(std::isfinite(integ));
  CHECK(integ > 0.0);
  const auto trip = gs2_triplet(0.7, 0.2, b);
  for (double xi : {0.5, 2.0}) {
    const cplx expect = -std::log(1.0 + 0.8 * std::pow(xi, 0.7) * std::exp(cplx(0.0, 0.1 * std::numbers::pi)));
    CHECK(std::abs(levy_khintchine_exponent(trip, xi, 0.0) - expect) < 1e-5);
  }
}
