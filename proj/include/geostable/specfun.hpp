#pragma once

#include <complex>

namespace geostable {

/// Truncation policy shared by every series in the library.
/// A series stops once |term| ≤ rel_tol·|partial sum| on two consecutive
/// terms with k ≥ k_min; reaching k_max first is a non-convergence.
struct SeriesControl {
  double rel_tol = 1e-16;
  int k_min = 2;
  int k_max = 400;

  void validate() const;
};

/// Principal value of ln Γ(z). Throws DomainError at z = 0, −1, −2, ...
std::complex<double> log_gamma(std::complex<double> z);

/// ln|Γ(x)| for real x (DomainError at the poles).
double log_gamma(double x);

/// 1/(Γ(z)Γ(1−z)) = sin(πz)/π, exactly zero at the integers.
double recip_gamma_pair(double z);

/// sin(πx) and cos(πx) with exact zeros at integers / half-integers.
double sin_pi(double x);
double cos_pi(double x);

/// ψ(x) = Γ'(x)/Γ(x) (DomainError at the poles).
double digamma(double x);

enum class MittagLefflerMethod { exponential, power_series, asymptotic, integral };

struct MittagLefflerValue {
  double value = 0.0;
  MittagLefflerMethod method = MittagLefflerMethod::power_series;
  int terms = 0;
  double error_estimate = 0.0;  // relative
};

/// One-parameter Mittag-Leffler function E_α(z) = Σ_j z^j / Γ(αj+1), α ∈ (0,1].
///
/// Power series for |z| ≤ 5. For z < −5 the asymptotic expansion
/// Σ_{k≥1} (−1)^{k−1} z^{−k}/Γ(1−αk) is used when its smallest term beats the
/// series round-off bound; when neither reaches 1e-11 the integral
/// representation E_α(−t^α) = ∫_0^∞ e^{−rt} K_α(r) dr takes over.
/// For large positive z, (1/α)exp(z^{1/α}) minus the matching integral.
MittagLefflerValue mittag_leffler_eval(double alpha, double z, const SeriesControl& ctl = {});

double mittag_leffler(double alpha, double z, const SeriesControl& ctl = {});

namespace detail {
// Lanczos evaluation, exposed so tests can check it against std::lgamma.
std::complex<double> log_gamma_lanczos(std::complex<double> z);
}  // namespace detail

}  // namespace geostable
