#pragma once

#include <functional>
#include <string>

#include "geostable/specfun.hpp"
#include "geostable/symbols.hpp"

namespace geostable {

enum class LevySupport { positive_halfline, full_line };

struct LevyValue {
  double value = 0.0;
  std::string method;
  int terms = 0;
  double error_estimate = 0.0;  // relative
  bool singular_flag = false;   // near-coincident poles in the series
};

/// Time-dependent Lévy density ν_t(x).
struct LevyDensity {
  std::function<LevyValue(double, double)> eval;
  LevySupport support = LevySupport::full_line;

  double operator()(double x, double t) const { return eval(x, t).value; }
};

/// x^{−1} e^{−x/b(t)}, x > 0.
double levy_gamma_inhom(const Curve& b, double x, double t);

/// α(t) x^{−1} E_{α(t)}(−x^{α(t)}/b), θ(t) = −α(t), α(t) ∈ (0,1].
LevyValue levy_gs1_sub(const ParamCurves& curves, double x, double t);

struct Gs2SeriesOptions {
  SeriesControl control{};
  bool allow_oracle_fallback = true;
  /// Accept a series value when its relative error estimate is below this.
  double accept_tol = 1e-9;
};

/// Lévy density of the GS² process from its residue series
/// (α ∈ (0,1) ∪ (1,2)); oracle fallback when the series is unusable.
LevyValue levy_gs2_series(double alpha, double theta, const Curve& b, double x, double t,
                          const Gs2SeriesOptions& opt = {});

/// ∫_0^∞ τ^{−1/α−1} p(x τ^{−1/α}; 1) e^{−τ/b(t)} dτ with p the stable density.
LevyValue levy_gs2_oracle(double alpha, double theta, const Curve& b, double x, double t);

/// ∫_0^∞ (e^{−λx} − 1) α x^{−1} E_α(−x^α/b) dx; equals −ln(1 + bλ^α).
double laplace_exponent_check(double alpha, double b, double lambda);

LevyDensity make_gamma_inhom_levy(const Curve& b);
LevyDensity make_gs1_levy(const ParamCurves& curves);
LevyDensity make_gs2_levy(double alpha, double theta, const Curve& b, const Gs2SeriesOptions& opt = {});

/// ∫ w(x) ν_t(x) dx over the support on a log grid [x_min, x_max] in |x|.
double levy_weighted_integral(const LevyDensity& nu, double t,
                              const std::function<double(double)>& weight,
                              double x_min = 1e-10, double x_max = 1e8);

/// ∫ min(x², 1) ν_t(dx).
double levy_integrability(const LevyDensity& nu, double t);

/// (drift, diffusion, ν). Drift is 0 for every GS and Gamma process here:
/// no compensation for α < 1, full compensation iξx for α > 1 (zero mean).
struct CharTriplet {
  double drift = 0.0;
  double diffusion = 0.0;
  LevyDensity levy;
  bool compensated = false;
};

CharTriplet gs2_triplet(double alpha, double theta, const Curve& b, const Gs2SeriesOptions& opt = {});

/// iξ·drift − diffusion·ξ² + ∫ (e^{iξx} − 1 [− iξx]) ν_t(x) dx.
cplx levy_khintchine_exponent(const CharTriplet& triplet, double xi, double t);

}  // namespace geostable
