#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geostable/quadrature.hpp"

namespace geostable {

using cplx = std::complex<double>;

/// Scalar function of time. Breakpoint-backed curves carry their knots so
/// quadrature can split there.
class Curve {
 public:
  enum class Kind { constant, piecewise_constant, piecewise_linear, function };

  Curve() : knots_{{0.0, 0.0}} {}

  static Curve constant(double v);
  /// Value v_i on [t_i, t_{i+1}); the last value extends to +inf, the first to −inf.
  static Curve piecewise_constant(std::vector<std::pair<double, double>> knots);
  /// Linear interpolation, flat extrapolation.
  static Curve piecewise_linear(std::vector<std::pair<double, double>> knots);
  static Curve function(std::function<double(double)> f, std::vector<double> breakpoints = {});

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::constant; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  std::vector<double> breakpoints() const;

  /// max / min over [a,b]. Exact for knot curves; golden-section refinement
  /// of a sampled maximum for function curves.
  double max_on(double a, double b) const;
  double min_on(double a, double b) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::constant;
  std::vector<std::pair<double, double>> knots_;
  std::function<double(double)> fn_;
  std::vector<double> fn_breaks_;
};

/// α(t), θ(t), b(t) on [0, t_max].
struct ParamCurves {
  Curve alpha;
  Curve theta;
  Curve b;
  double t_max = 1.0;
  /// Declared bound K with b(t) < K < 1 (finite exponential moments).
  std::optional<double> mgf_bound;

  /// Admissibility on a dense sample grid plus both sides of every knot.
  void validate(int samples = 2001) const;

  /// Union of the curves' knots strictly inside (s,t), with s and t at the ends.
  std::vector<double> breakpoints(double s, double t) const;
};

/// Throws DomainError unless α ∈ (0,2], α ≠ 1, |θ| ≤ min(α, 2−α).
void check_admissible(double alpha, double theta);

/// ψ_{α,θ}(ξ) = |ξ|^α exp(i sign(ξ) πθ/2).
cplx psi(double alpha, double theta, double xi);

struct PolarParams {
  double sigma;
  double beta;
};

/// σ = cos(πθ/2)^{1/α}, β = −tan(πθ/2)/tan(πα/2); (1,0) at α = 2.
PolarParams feller_to_polar(double alpha, double theta);

enum class SymbolKind { stable, multistable, gs1, gs2, gamma_inhom, vg_inhom, custom };

const char* to_string(SymbolKind k);

/// Characteristic exponent η(ξ,t): E exp(iξ(X_t − X_s)) = exp ∫_s^t η(ξ,τ)dτ.
struct SymbolEval {
  SymbolKind kind = SymbolKind::custom;
  std::function<cplx(double, double)> eval;
  /// Times where η jumps or has a kink.
  std::vector<double> breakpoints;

  cplx operator()(double xi, double t) const { return eval(xi, t); }
};

SymbolEval make_stable_symbol(double alpha, double theta);
SymbolEval make_multistable_symbol(const ParamCurves& curves);
SymbolEval make_gs1_symbol(const ParamCurves& curves);
SymbolEval make_gs2_symbol(const ParamCurves& curves);
SymbolEval make_gamma_inhom_symbol(const Curve& b);
SymbolEval make_vg_inhom_symbol(const Curve& b);
SymbolEval make_custom_symbol(std::function<cplx(double, double)> eval,
                              std::vector<double> breakpoints = {});
/// η(ξ) = −c ξ².
SymbolEval make_heat_symbol(double c = 1.0);

/// −ln(1 + b ψ_{α(t),θ(t)}(ξ)), b constant.
cplx eta_gs1(const ParamCurves& curves, double xi, double t);
/// −ln(1 + b(t) ψ_{α,θ}(ξ)), α and θ constant.
cplx eta_gs2(const ParamCurves& curves, double xi, double t);

/// ∫_s^t η(ξ,τ)dτ, absolute error ≤ 1e-9 (adaptive GK21, split at breakpoints).
cplx accumulated_exponent(const SymbolEval& sym, double s, double t, double xi);

/// E exp(i Σ_j ξ_j X(t_j)).
cplx joint_cf(const SymbolEval& sym, const std::vector<double>& times,
              const std::vector<double>& xis);

/// ∫_{1/b}^∞ (1/τ)(−ψ)/(τ+ψ) dτ, which equals −ln(1 + bψ).
cplx log_symbol_resolvent(double b, cplx psi_val);

struct LogSeriesResult {
  cplx value;
  bool divergent;  // |bψ| ≥ 1
};

/// Σ_{n=1..N} (−1)^n (bψ)^n / n.
LogSeriesResult log_symbol_series(double b, cplx psi_val, int n_terms);

}  // namespace geostable
