#pragma once

#include <functional>
#include <vector>

#include "geostable/symbols.hpp"
#include "geostable/transform.hpp"

namespace geostable {

/// Samples of a function on a SpectralGrid x-grid.
struct GridFunction {
  SpectralGrid grid;
  std::vector<cplx> values;

  static GridFunction sample(const SpectralGrid& grid, const std::function<double(double)>& f);
  static GridFunction from_real(const SpectralGrid& grid, const std::vector<double>& v);

  std::vector<double> real() const;
  /// |values| on the outer 5% of the window below tol·max|values|.
  bool decays(double tol = 1e-8) const;
  void check_decay(double tol = 1e-8) const;
  double integral() const;
  double sup_norm() const;
  double l2_norm() const;
};

/// Density of N(mean, sd²).
GridFunction gaussian_preset(const SpectralGrid& grid, double mean = 0.0, double sd = 1.0);
/// C^∞ bump exp(−1/(1−r²)), r = (x − centre)/radius, normalized to unit mass.
GridFunction bump_preset(const SpectralGrid& grid, double centre = 0.0, double radius = 1.0);

/// Fourier multiplier m(ξ) applied to f.
GridFunction apply_multiplier(const GridFunction& f, const std::function<cplx(double)>& m);

/// T_{s,t} f = F^{−1}[exp(∫_s^t η(ξ,τ)dτ) f̂], i.e. E f(x + X_t − X_s).
/// `check_decay = false` skips the input decay check (heavy-tailed
/// intermediate results of a composition).
GridFunction propagate(const GridFunction& f, double s, double t, const SymbolEval& sym,
                       bool check_decay = true);

/// L²-adjoint of T_{s,t}: transports a density of X_s to the density of X_t.
GridFunction propagate_adjoint(const GridFunction& f, double s, double t, const SymbolEval& sym,
                               bool check_decay = true);

/// A_t f = F^{−1}[η(ξ,t) f̂].
GridFunction generator_apply(const GridFunction& f, double t, const SymbolEval& sym);

/// Riesz–Feller derivative through its multiplier −|ξ|^α e^{−i sign(ξ) θπ/2}.
GridFunction riesz_spectral(const GridFunction& f, double alpha, double theta);

/// Riesz–Feller derivative at x from the hypersingular real-space integrals.
double riesz_apply_quadrature(const GridFunction& f, double alpha, double theta, double x);

/// f embedded in a window `factor` times wider (same spacing), zero outside.
GridFunction zero_pad(const GridFunction& f, std::size_t factor);

/// |⟨T f, g⟩ − ⟨f, T g⟩| / (‖f‖‖g‖) with the real L² pairing.
double selfadjoint_check(const GridFunction& f, const GridFunction& g, double s, double t,
                         const SymbolEval& sym);

/// ‖A_t T_{s,t} f − T_{s,t} A_t f‖∞ / ‖A_t T_{s,t} f‖∞.
double commute_check(const GridFunction& f, double s, double t, const SymbolEval& sym);

/// Snapshots T_{s0,t} f (or the adjoint) at each horizon t, one exponent
/// integral per horizon.
std::vector<GridFunction> solve(const GridFunction& f, const SymbolEval& sym,
                                const std::vector<double>& horizons, double s0 = 0.0,
                                bool adjoint = false);

}  // namespace geostable
