#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "geostable/symbols.hpp"

namespace geostable {

using CharFn = std::function<cplx(double)>;

/// Uniform x-grid on [−L, L) with n points and the matching ξ-grid.
/// x_j = −L + j·dx, ξ_k = (k − n/2)·dξ, dx = 2L/n, dξ = π/L.
struct SpectralGrid {
  std::size_t n = 4096;
  double x_extent = 20.0;

  SpectralGrid() = default;
  SpectralGrid(std::size_t n_, double extent) : n(n_), x_extent(extent) { validate(); }

  /// n a power of two ≥ min_n, L > 0.
  void validate(std::size_t min_n = 2) const;
  double dx() const { return 2.0 * x_extent / static_cast<double>(n); }
  double dxi() const;
  double x(std::size_t j) const { return -x_extent + static_cast<double>(j) * dx(); }
  double xi(std::size_t k) const;
  double xi_max() const { return xi(0) < 0 ? -xi(0) : xi(0); }
  std::vector<double> xs() const;
  std::vector<double> xis() const;
};

struct DensityOptions {
  bool check_aliasing = true;
  double aliasing_tol = 1e-8;
  /// Gaussian damping of a slowly decaying CF instead of failing the aliasing check.
  bool allow_window = false;
  bool check_hermitian = true;
};

struct DensityResult {
  std::vector<double> x;
  std::vector<double> density;
  double mass = 0.0;
  double min_value = 0.0;
  bool windowed = false;
  double window_difference = 0.0;  // max |raw − windowed|
  std::vector<std::string> warnings;
};

DensityResult cf_to_density(const CharFn& cf, const SpectralGrid& grid,
                            const DensityOptions& opt = {});

/// Density of S_{α,θ}(t) at x from the Zolotarev integral representation.
double stable_density(double alpha, double theta, double x, double t = 1.0);

/// FFT route for the same density on a grid (cross-check path).
DensityResult stable_density_fft(double alpha, double theta, double t, const SpectralGrid& grid,
                                 const DensityOptions& opt = {});

/// P(X > x) from the Gil–Pelaez inversion formula.
double tail_prob_gilpelaez(const CharFn& cf, double x);

/// (1/n) Σ_j exp(iξ X_j) for each ξ.
std::vector<cplx> empirical_cf(const std::vector<double>& samples, const std::vector<double>& xis,
                               int threads = 1);

/// (b/Γ(1−α*_t)) ∫_0^t α(s) x^{−α(s)} ds with α*_t = max_{[0,t]} α.
double tail_asymptote_gs1(const ParamCurves& curves, double t, double x);

/// α*_t = max over [0,t] of α(s).
double alpha_star(const ParamCurves& curves, double t);

struct TailConstants {
  double c;      // right tail
  double c_bar;  // left tail
};

/// C = ½[1 − tan(πθ/2)/tan(πα/2)], C̄ = ½[1 + tan(πθ/2)/tan(πα/2)].
TailConstants tail_constants_gs2(double alpha, double theta);

/// lim x^α P(X > x) / ∫b for the GS² process, from the stable tail
/// P(S_{α,θ}(1) > x) ∼ C cos(πθ/2) / (Γ(1−α) cos(πα/2)) x^{−α}.
double gs2_tail_coefficient(double alpha, double theta);

/// The theorem's stated coefficient C/Γ(1−α).
double gs2_tail_coefficient_stated(double alpha, double theta);

struct TailReport {
  std::vector<double> levels;
  std::vector<double> survival;
  std::vector<double> asymptote;
  double slope = 0.0;
  double slope_stderr = 0.0;
  std::size_t exceedances = 0;
};

/// Least-squares slope of log P̂(X > x) against log x on log-spaced levels
/// between the empirical q_lo and q_hi quantiles.
TailReport tail_slope_fit(const std::vector<double>& samples, double q_lo = 0.99,
                          double q_hi = 0.9999, int n_levels = 20);

/// Empirical survival P̂(X > x).
double empirical_survival(const std::vector<double>& sorted_samples, double x);

struct Moments {
  double mean;
  double variance;
};

/// E Γ¹(t) = ∫_0^t b, Var Γ¹(t) = ∫_0^t b².
Moments gamma_inhom_moments(const Curve& b, double t);

/// exp{−∫_0^t ln(1 − γ b(s)) ds}, requires b < K < 1 and |γ| ≤ 1/K.
double mgf_gamma_inhom(const Curve& b, double t, double gamma, double K);

}  // namespace geostable
