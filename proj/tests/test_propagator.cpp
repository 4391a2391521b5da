#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "geostable/errors.hpp"
#include "geostable/propagator.hpp"

using namespace geostable;

namespace {

constexpr double kPi = std::numbers::pi;

double sup_diff(const GridFunction& a, const GridFunction& b) {
  double w = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) w = std::max(w, std::abs(a.values[j] - b.values[j]));
  return w;
}

SymbolEval gs2_sym() {
  return make_gs2_symbol({Curve::constant(1.5), Curve::constant(0.3), Curve::piecewise_linear({{0.0, 1.0}, {1.0, 2.0}}),
                          1.0, std::nullopt});
}

}  // namespace

TEST_CASE("presets") {
  const SpectralGrid g(2048, 20.0);
  CHECK(gaussian_preset(g, 1.0, 0.5).integral() == doctest::Approx(1.0).epsilon(1e-12));
  const auto bump = bump_preset(g, -2.0, 1.5);
  CHECK(bump.integral() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bump.values[0] == cplx(0.0));
  CHECK(bump.decays());
}

TEST_CASE("heat propagator widens a Gaussian exactly") {
  const SpectralGrid g(2048, 30.0);
  const auto f = gaussian_preset(g, 0.0, 1.0);
  const auto out = propagate(f, 0.0, 0.75, make_heat_symbol(1.0));
  const auto expect = gaussian_preset(g, 0.0, std::sqrt(1.0 + 2.0 * 0.75));
  CHECK(sup_diff(out, expect) < 1e-12);
}

TEST_CASE("propagation over an empty interval is the identity") {
  const SpectralGrid g(1024, 20.0);
  const auto f = bump_preset(g, 0.5, 2.0);
  CHECK(sup_diff(propagate(f, 0.4, 0.4, gs2_sym()), f) < 1e-14);
  CHECK(sup_diff(propagate_adjoint(f, 0.4, 0.4, gs2_sym()), f) < 1e-14);
}

TEST_CASE("forward propagator is E f(x + X): a shift is a pure drift") {
  const SpectralGrid g(1024, 20.0);
  const auto f = gaussian_preset(g, 0.0, 1.0);
  const auto drift = make_custom_symbol([](double xi, double) { return cplx(0.0, 2.0 * xi); });
  const auto out = propagate(f, 0.0, 0.5, drift);  // f(x + 1)
  CHECK(sup_diff(out, gaussian_preset(g, -1.0, 1.0)) < 1e-12);
  const auto back = propagate_adjoint(f, 0.0, 0.5, drift);  // density moves right
  CHECK(sup_diff(back, gaussian_preset(g, 1.0, 1.0)) < 1e-12);
}

TEST_CASE("chain rule and mass conservation for random intervals") {
  const SpectralGrid g(2048, 40.0);
  const auto f = gaussian_preset(g, 0.3, 1.2);
  const auto sym = gs2_sym();
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    double r = u(gen), s = u(gen), t = u(gen);
    if (r > s) std::swap(r, s);
    if (s > t) std::swap(s, t);
    if (r > s) std::swap(r, s);
    const auto two = propagate(propagate(f, r, s, sym), s, t, sym, false);
    CHECK(sup_diff(two, propagate(f, r, t, sym)) < 1e-9);
    CHECK(propagate_adjoint(f, r, t, sym).integral() == doctest::Approx(f.integral()).epsilon(1e-10));
  }
}

TEST_CASE("self-adjointness holds for symmetric symbols only") {
  const SpectralGrid g(2048, 40.0);
  const auto f = gaussian_preset(g, 0.5, 1.0);
  const auto h = GridFunction::sample(g, [](double x) { return x * std::exp(-0.5 * x * x); });
  CHECK(selfadjoint_check(f, h, 0.0, 1.0, make_heat_symbol()) < 1e-12);
  CHECK(selfadjoint_check(f, h, 0.0, 1.0, make_vg_inhom_symbol(Curve::constant(0.5))) < 1e-12);
  CHECK(selfadjoint_check(f, h, 0.0, 1.0, gs2_sym()) > 1e-3);
}

TEST_CASE("generator commutes with the propagator") {
  const SpectralGrid g(2048, 40.0);
  const auto f = gaussian_preset(g, 0.0, 1.0);
  const auto hom = make_gs2_symbol({Curve::constant(1.5), Curve::constant(0.3), Curve::constant(1.0), 1.0, std::nullopt});
  CHECK(commute_check(f, 0.0, 0.7, hom) < 1e-10);
}

TEST_CASE("Riesz-Feller derivative") {
  const SpectralGrid g(1024, 20.0);
  const auto f = gaussian_preset(g, 0.0, 1.0);
  // α = 2, θ = 0 is the second derivative
  const auto d2 = riesz_spectral(f, 2.0, 0.0);
  for (std::size_t j = 200; j < 824; j += 41) {
    const double x = g.x(j);
    const double expect = (x * x - 1.0) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    CHECK(std::abs(d2.values[j].real() - expect) < 1e-10);
  }
  const auto padded = zero_pad(f, 64);
  const auto spec = riesz_spectral(padded, 1.5, 0.0);
  const std::size_t off = (padded.grid.n - g.n) / 2;
  for (std::size_t j : {412, 512, 600}) {
    const double q = riesz_apply_quadrature(f, 1.5, 0.0, g.x(j));
    CHECK(q == doctest::Approx(spec.values[off + j].real()).epsilon(1e-4));
  }
}

TEST_CASE("zero padding keeps values and spacing") {
  const SpectralGrid g(256, 10.0);
  const auto f = gaussian_preset(g, 0.0, 1.0);
  const auto p = zero_pad(f, 4);
  CHECK(p.grid.n == 1024);
  CHECK(p.grid.dx() == doctest::Approx(g.dx()));
  CHECK(p.values[384 + 128] == f.values[128]);
  CHECK(p.integral() == doctest::Approx(f.integral()).epsilon(1e-14));
  CHECK_THROWS_AS(zero_pad(f, 3), DomainError);
}

TEST_CASE("decay check rejects functions that do not vanish at the window edge") {
  const SpectralGrid g(256, 10.0);
  const auto wide = GridFunction::sample(g, [](double) { return 1.0; });
  CHECK_THROWS_AS(propagate(wide, 0.0, 1.0, make_heat_symbol()), DomainError);
}

TEST_CASE("solve returns one snapshot per horizon") {
  const SpectralGrid g(2048, 40.0);
  const auto f = gaussian_preset(g, 0.0, 0.5);
  const auto snaps = solve(f, gs2_sym(), {0.0, 0.5, 1.0}, 0.0, true);
  REQUIRE(snaps.size() == 3);
  CHECK(sup_diff(snaps[0], f) < 1e-14);
  const auto direct = propagate_adjoint(f, 0.0, 1.0, gs2_sym());
  CHECK(sup_diff(snaps[2], direct) < 1e-14);
}
