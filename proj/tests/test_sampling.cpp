#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geostable/errors.hpp"
#include "geostable/sampling.hpp"
#include "geostable/transform.hpp"

using namespace geostable;

namespace {

double mean(const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0) / x.size(); }

double var(const std::vector<double>& x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / (x.size() - 1);
}

double cf_err(const std::vector<double>& x, const std::vector<double>& xis, const std::vector<cplx>& target) {
  const auto e = empirical_cf(x, xis);
  double w = 0.0;
  for (std::size_t i = 0; i < xis.size(); ++i) w = std::max(w, std::abs(e[i] - target[i]));
  return w;
}

}  // namespace

TEST_CASE("Rng is reproducible per (seed, stream, chunk)") {
  Rng a(5, 1), b(5, 1), c(5, 2);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    differs = differs || (u != c.uniform());
  }
  CHECK(differs);
}

TEST_CASE("Rng variates have the right first two moments") {
  Rng r(9, 0);
  const int n = 400000;
  std::vector<double> nrm(n), ex(n), ga(n);
  for (int i = 0; i < n; ++i) {
    nrm[i] = r.normal();
    ex[i] = r.exponential();
    ga[i] = r.gamma(0.3, 2.0);
  }
  CHECK(std::abs(mean(nrm)) < 0.01);
  CHECK(var(nrm) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(mean(ex) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(mean(ga) == doctest::Approx(0.6).epsilon(0.015));
  CHECK(var(ga) == doctest::Approx(1.2).epsilon(0.03));
  // tiny shapes: ln G finite, mean of G still the shape
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lg = r.log_gamma_variate(1e-3);
    CHECK_FALSE(std::isnan(lg));
    s += std::exp(lg);
  }
  CHECK(s / n == doctest::Approx(1e-3).epsilon(0.15));
}

TEST_CASE("samples do not depend on the thread count") {
  const RngStream st{42, 3};
  const auto one = stable_sample(1.5, 0.3, 1.0, 50000, st, 1);
  const auto four = stable_sample(1.5, 0.3, 1.0, 50000, st, 4);
  CHECK(one == four);
  ParamCurves pc{Curve::constant(0.7), Curve::constant(0.0), Curve::piecewise_linear({{0.0, 1.0}, {1.0, 2.0}}),
                 1.0, std::nullopt};
  const auto grid = uniform_grid(1.0, 10);
  CHECK(gs2_sample(pc, grid, 20000, st, 1).values == gs2_sample(pc, grid, 20000, st, 3).values);
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(2.0, 4);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  CHECK(g[1] == 0.5);
  CHECK_THROWS_AS(uniform_grid(1.0, 0), DomainError);
}

TEST_CASE("stable sampler: Gaussian case and CF") {
  const auto x = stable_sample(2.0, 0.0, 1.5, 400000, {1, 0});
  CHECK(var(x) == doctest::Approx(3.0).epsilon(0.01));
  const std::vector<double> xis = {0.3, 1.0, 2.5};
  for (auto [a, th] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.3, -0.7}, {1.9, 0.1}}) {
    const auto y = stable_sample(a, th, 0.7, 400000, {2, 0});
    std::vector<cplx> target;
    for (double xi : xis) target.push_back(std::exp(-0.7 * psi(a, th, xi)));
    CHECK(cf_err(y, xis, target) < 6e-3);
  }
  // totally skewed α < 1 is a subordinator
  const auto sub = stable_sample(0.6, -0.6, 1.0, 100000, {3, 0});
  CHECK(*std::min_element(sub.begin(), sub.end()) > 0.0);
  CHECK_THROWS_AS(stable_sample(1.0, 0.0, 1.0, 10, {1, 0}), DomainError);
}

TEST_CASE("inhomogeneous gamma paths: increasing, with the right mean and variance") {
  const Curve b = Curve::piecewise_linear({{0.0, 0.5}, {1.0, 1.5}});
  const auto grid = uniform_grid(1.0, 50);
  const auto p = gamma_inhom_sample(b, grid, 100000, {4, 0});
  for (std::size_t i = 0; i < 200; ++i)
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(p.at(i, k) >= p.at(i, k - 1));
  // left-endpoint freezing: E = Σ h b(t_k), Var = Σ h b(t_k)²
  double m = 0.0, v = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    m += 0.02 * b(grid[k]);
    v += 0.02 * b(grid[k]) * b(grid[k]);
  }
  const auto term = p.terminal();
  CHECK(mean(term) == doctest::Approx(m).epsilon(0.01));
  CHECK(var(term) == doctest::Approx(v).epsilon(0.02));
  const auto mo = gamma_inhom_moments(b, 1.0);
  CHECK(mo.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mo.variance == doctest::Approx(13.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("terminal samplers match the final column of the path samplers in law") {
  ParamCurves pc{Curve::piecewise_constant({{0.0, 1.2}, {0.5, 1.7}}), Curve::constant(0.1), Curve::constant(0.8),
                 1.0, std::nullopt};
  const auto paths = gs1_sample(pc, uniform_grid(1.0, 20), 200000, {5, 0});
  const auto term = gs1_terminal(pc, 1.0, 20, 200000, {5, 1});
  const std::vector<double> xis = {0.5, 1.0, 2.0};
  const auto sym = make_gs1_symbol(pc);
  std::vector<cplx> target;
  for (double xi : xis) target.push_back(std::exp(accumulated_exponent(sym, 0.0, 1.0, xi)));
  CHECK(cf_err(paths.terminal(), xis, target) < 8e-3);
  CHECK(cf_err(term, xis, target) < 8e-3);
}

TEST_CASE("GS2 with constant b equals the homogeneous GS law") {
  ParamCurves pc{Curve::constant(0.8), Curve::constant(0.2), Curve::constant(0.6), 1.3, std::nullopt};
  const auto x = gs2_terminal(pc, 1.3, 7, 300000, {6, 0});
  const auto y = gs_homog_sample(0.8, 0.2, 0.6, 1.3, 300000, {6, 1});
  const std::vector<double> xis = {0.25, 1.0, 3.0};
  std::vector<cplx> target;
  for (double xi : xis) target.push_back(std::exp(-1.3 * std::log(1.0 + 0.6 * psi(0.8, 0.2, xi))));
  CHECK(cf_err(x, xis, target) < 6e-3);
  CHECK(cf_err(y, xis, target) < 6e-3);
}

TEST_CASE("multistable sampler and VG constructions") {
  ParamCurves pc{Curve::piecewise_linear({{0.0, 1.2}, {1.0, 1.8}}), Curve::constant(0.0), Curve::constant(1.0),
                 1.0, std::nullopt};
  const auto x = multistable_terminal(pc, 1.0, 200, 300000, {7, 0});
  const auto sym = make_multistable_symbol(pc);
  const std::vector<double> xis = {0.5, 1.0, 2.0};
  std::vector<cplx> target;
  for (double xi : xis) target.push_back(std::exp(accumulated_exponent(sym, 0.0, 1.0, xi)));
  CHECK(cf_err(x, xis, target) < 8e-3);

  const Curve b = Curve::constant(0.5);
  const auto v1 = vg_inhom_terminal(b, 2.0, 10, 300000, {8, 0}, VgMode::brownian_subordination);
  const auto v2 = vg_inhom_terminal(b, 2.0, 10, 300000, {8, 1}, VgMode::gamma_difference);
  CHECK(var(v1) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(var(v2) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Pareto samples give the exact tail slope") {
  Rng r(10, 0);
  std::vector<double> x(1000000);
  for (auto& v : x) v = std::pow(r.uniform(), -1.0 / 0.7);  // P(X > x) = x^{-0.7}
  const auto rep = tail_slope_fit(x);
  CHECK(rep.slope == doctest::Approx(-0.7).epsilon(0.04));
  std::sort(x.begin(), x.end());
  CHECK(empirical_survival(x, 10.0) == doctest::Approx(std::pow(10.0, -0.7)).epsilon(0.01));
}
