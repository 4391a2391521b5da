#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geostable/errors.hpp"
#include "geostable/symbols.hpp"

using namespace geostable;

namespace {

constexpr double kPi = std::numbers::pi;

struct Draw {
  double alpha, theta, xi;
};

// Random admissible (α, θ, ξ).
Draw draw(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a;
  do a = 0.05 + 1.95 * u(gen);
  while (std::abs(a - 1.0) < 0.02);
  const double lim = std::min(a, 2.0 - a);
  return {a, lim * (2.0 * u(gen) - 1.0), std::exp(6.0 * u(gen) - 3.0)};
}

}  // namespace

TEST_CASE("Curve evaluation") {
  const auto c = Curve::constant(0.7);
  CHECK(c(-3.0) == 0.7);
  CHECK(c(12.0) == 0.7);
  const auto s = Curve::piecewise_constant({{0.0, 1.0}, {1.0, 2.0}});
  CHECK(s(0.999) == 1.0);
  CHECK(s(1.0) == 2.0);
  CHECK(s(-1.0) == 1.0);
  const auto l = Curve::piecewise_linear({{0.0, 1.0}, {2.0, 3.0}});
  CHECK(l(1.0) == doctest::Approx(2.0));
  CHECK(l(5.0) == 3.0);
  CHECK(l.max_on(0.0, 1.5) == doctest::Approx(2.5));
  CHECK(l.min_on(0.5, 1.5) == doctest::Approx(1.5));
  const auto f = Curve::function([](double t) { return std::sin(t); });
  CHECK(f.max_on(0.0, 3.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("admissibility") {
  CHECK_THROWS_AS(check_admissible(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(check_admissible(0.5, 0.6), DomainError);
  CHECK_THROWS_AS(check_admissible(1.5, -0.6), DomainError);
  CHECK_THROWS_AS(check_admissible(2.1, 0.0), DomainError);
  CHECK_NOTHROW(check_admissible(2.0, 0.0));
  CHECK_NOTHROW(check_admissible(0.6, -0.6));
  ParamCurves pc{Curve::piecewise_linear({{0.0, 0.5}, {1.0, 1.5}}), Curve::constant(0.0), Curve::constant(1.0),
                 1.0, std::nullopt};
  CHECK_THROWS_AS(pc.validate(), DomainError);  // crosses α = 1
}

TEST_CASE("psi is Hermitian and homogeneous") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto d = draw(gen);
    const cplx p = psi(d.alpha, d.theta, d.xi);
    CHECK(std::abs(psi(d.alpha, d.theta, -d.xi) - std::conj(p)) < 1e-14 * std::abs(p));
    CHECK(std::abs(psi(d.alpha, d.theta, 2.0 * d.xi) - std::pow(2.0, d.alpha) * p) < 1e-12 * std::abs(p));
    CHECK(p.real() >= 0.0);
  }
  CHECK(psi(2.0, 0.0, 3.0) == cplx(9.0, 0.0));
}

TEST_CASE("Feller to polar conversion") {
  const auto p = feller_to_polar(1.5, 0.3);
  CHECK(p.sigma == doctest::Approx(std::pow(std::cos(0.15 * kPi), 1.0 / 1.5)));
  CHECK(p.beta == doctest::Approx(-std::tan(0.15 * kPi) / std::tan(0.75 * kPi)));
  const auto q = feller_to_polar(0.6, -0.6);
  CHECK(q.beta == doctest::Approx(1.0));
}

TEST_CASE("log symbol: resolvent integral and power series agree with the logarithm") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> ub(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const auto d = draw(gen);
    const double b = std::exp(ub(gen));
    const cplx p = psi(d.alpha, d.theta, d.xi);
    const cplx ref = -std::log(1.0 + b * p);
    CHECK(std::abs(log_symbol_resolvent(b, p) - ref) < 1e-9);
    const auto s = log_symbol_series(b, p, 400);
    CHECK(s.divergent == (std::abs(b * p) >= 1.0));
    if (std::abs(b * p) <= 0.9) CHECK(std::abs(s.value - ref) < 1e-12);
  }
}

TEST_CASE("accumulated exponent of homogeneous symbols is linear in time") {
  std::mt19937_64 gen(13);
  for (int i = 0; i < 50; ++i) {
    const auto d = draw(gen);
    const auto st = make_stable_symbol(d.alpha, d.theta);
    CHECK(std::abs(accumulated_exponent(st, 0.3, 1.8, d.xi) + 1.5 * psi(d.alpha, d.theta, d.xi)) < 1e-9);
  }
  // α = 2, θ = 0 GS² is the variance-gamma symbol.
  const Curve b = Curve::piecewise_linear({{0.0, 0.5}, {1.0, 0.75}});
  const auto gs2 = make_gs2_symbol({Curve::constant(2.0), Curve::constant(0.0), b, 1.0, std::nullopt});
  const auto vg = make_vg_inhom_symbol(b);
  for (double xi : {0.1, 1.0, 7.0}) {
    CHECK(std::abs(gs2(xi, 0.4) + std::log(1.0 + b(0.4) * xi * xi)) < 1e-14);
    CHECK(std::abs(accumulated_exponent(gs2, 0.0, 1.0, xi) - accumulated_exponent(vg, 0.0, 1.0, xi)) < 1e-9);
  }
}

TEST_CASE("accumulated exponent is additive over adjacent intervals") {
  ParamCurves pc{Curve::piecewise_constant({{0.0, 0.4}, {0.7, 0.8}}),
                 Curve::piecewise_constant({{0.0, -0.4}, {0.7, -0.8}}), Curve::constant(1.0), 2.0, std::nullopt};
  const auto sym = make_gs1_symbol(pc);
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    double r = u(gen), s = u(gen), t = u(gen);
    if (r > s) std::swap(r, s);
    if (s > t) std::swap(s, t);
    if (r > s) std::swap(r, s);
    const double xi = u(gen) * 3.0;
    const cplx whole = accumulated_exponent(sym, r, t, xi);
    const cplx parts = accumulated_exponent(sym, r, s, xi) + accumulated_exponent(sym, s, t, xi);
    CHECK(std::abs(whole - parts) < 2e-9);
  }
}

TEST_CASE("joint CF factorizes over independent increments") {
  const auto sym = make_gs2_symbol(
      {Curve::constant(1.5), Curve::constant(0.3), Curve::piecewise_linear({{0.0, 1.0}, {1.0, 2.0}}), 1.0,
       std::nullopt});
  const std::vector<double> times = {0.3, 1.0};
  const std::vector<double> xis = {0.7, -0.2};
  // ξ1 X(t1) + ξ2 X(t2) = (ξ1+ξ2) X(t1) + ξ2 (X(t2) − X(t1))
  const cplx expect = std::exp(accumulated_exponent(sym, 0.0, 0.3, 0.5) + accumulated_exponent(sym, 0.3, 1.0, -0.2));
  CHECK(std::abs(joint_cf(sym, times, xis) - expect) < 1e-9);
}
