#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geostable/errors.hpp"
#include "geostable/quadrature.hpp"
#include "geostable/specfun.hpp"

using namespace geostable;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286061;
}  // namespace

TEST_CASE("GK21 integrates monomials exactly") {
  for (int k = 0; k <= 30; ++k) {
    auto r = quad::integrate([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("quadrature on infinite ranges and breakpoints") {
  auto r = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  const double pts[] = {-1.0, 0.0, 2.0};
  auto s = quad::integrate_breakpoints([](double x) { return std::abs(x); }, pts);
  CHECK(s.value == doctest::Approx(2.5).epsilon(1e-14));
  auto c = quad::integrate([](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0, kPi);
  CHECK(std::abs(c.value - std::complex<double>(0.0, 2.0)) < 1e-13);
}

TEST_CASE("log_gamma against std::lgamma and the reflection formula") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-20.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(gen);
    if (std::abs(x - std::round(x)) < 1e-6 && x <= 0.0) continue;
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
  }
  std::uniform_real_distribution<double> v(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const std::complex<double> z(v(gen), v(gen));
    const auto lhs = log_gamma(z) + log_gamma(1.0 - z);
    const auto rhs = std::log(kPi / std::sin(kPi * z));
    CHECK(std::abs(std::exp(lhs - rhs) - 1.0) < 1e-11);
  }
  CHECK_THROWS_AS(log_gamma(-2.0), DomainError);
  CHECK_THROWS_AS(log_gamma(std::complex<double>(0.0, 0.0)), DomainError);
}

TEST_CASE("digamma special values and recurrence") {
  CHECK(digamma(1.0) == doctest::Approx(-kEuler).epsilon(1e-13));
  CHECK(digamma(0.5) == doctest::Approx(-kEuler - 2.0 * std::log(2.0)).epsilon(1e-13));
  for (double x : {-2.5, -0.3, 0.2, 1.7, 9.1, 55.0})
    CHECK(digamma(x + 1.0) - digamma(x) == doctest::Approx(1.0 / x).epsilon(1e-11));
  CHECK_THROWS_AS(digamma(-3.0), DomainError);
}

TEST_CASE("exact zeros of sin_pi, cos_pi and the reciprocal gamma pair") {
  for (int k = -5; k <= 5; ++k) {
    CHECK(sin_pi(k) == 0.0);
    CHECK(cos_pi(k + 0.5) == 0.0);
    CHECK(recip_gamma_pair(k) == 0.0);
  }
  CHECK(recip_gamma_pair(0.3) == doctest::Approx(std::sin(0.3 * kPi) / kPi).epsilon(1e-15));
}

TEST_CASE("E_1 is the exponential") {
  for (double z = -30.0; z <= 30.0; z += 0.37)
    CHECK(mittag_leffler(1.0, z) == doctest::Approx(std::exp(z)).epsilon(1e-12));
}

TEST_CASE("E_1/2(-x) = exp(x^2) erfc(x) across all evaluation regimes") {
  for (double x = 0.0; x <= 6.0; x += 0.05) {
    const auto v = mittag_leffler_eval(0.5, -x);
    const double oracle = std::exp(x * x) * std::erfc(x);
    CHECK_MESSAGE(v.value == doctest::Approx(oracle).epsilon(1e-10), "x = " << x);
  }
  // scaled-erfc asymptotics beyond double range of exp(x^2)
  for (double x : {10.0, 30.0, 100.0}) {
    const double oracle = 1.0 / (x * std::sqrt(kPi)) * (1.0 - 0.5 / (x * x) + 0.75 / std::pow(x, 4));
    CHECK(mittag_leffler(0.5, -x) == doctest::Approx(oracle).epsilon(2e-6));
  }
}

TEST_CASE("E_alpha(-x) is completely monotone: positive and decreasing on x > 0") {
  for (double a : {0.2, 0.45, 0.7, 0.95}) {
    double prev = mittag_leffler(a, 0.0);
    CHECK(prev == 1.0);
    for (double x = 0.1; x < 50.0; x *= 1.3) {
      const double v = mittag_leffler(a, -x);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("Mittag-Leffler argument checks") {
  CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler(1.5, 1.0), DomainError);
  SeriesControl bad;
  bad.k_max = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
