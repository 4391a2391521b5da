#include "geostable/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "geostable/errors.hpp"
#include "geostable/quadrature.hpp"

namespace geostable {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Accept a method only when its estimated relative error is below this.
constexpr double kMittagLefflerAccept = 1e-11;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

std::complex<double> principal(std::complex<double> w) {
  double im = std::remainder(w.imag(), 2.0 * kPi);  // (−π, π]
  if (im <= -kPi) im += 2.0 * kPi;
  return {w.real(), im};
}

}  // namespace

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be positive");
  if (k_min < 1 || k_min > k_max) throw DomainError("SeriesControl: need 1 <= k_min <= k_max");
}

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x == std::floor(x)) return 0.0;
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  const double q = std::round(2.0 * r);
  const double y = r - 0.5 * q;  // |y| ≤ 1/4
  switch (static_cast<int>(q)) {
    case 0:
    case 4:
      return std::sin(kPi * y);
    case 1:
      return std::cos(kPi * y);
    case 2:
      return -std::sin(kPi * y);
    default:
      return -std::cos(kPi * y);
  }
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double recip_gamma_pair(double z) { return sin_pi(z) / kPi; }

namespace detail {

std::complex<double> log_gamma_lanczos(std::complex<double> z) {
  static constexpr double kG = 7.0;
  static constexpr double kCoef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection: ln Γ(z) = ln π − ln sin(πz) − ln Γ(1−z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_lanczos(1.0 - z);
  }
  const std::complex<double> zm = z - 1.0;
  std::complex<double> a = kCoef[0];
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (zm + static_cast<double>(i));
  const std::complex<double> t = zm + kG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (is_nonpositive_integer(x)) {
      std::ostringstream os;
      os << "log_gamma: pole at non-positive integer " << x;
      throw DomainError(os.str());
    }
    const double mag = std::lgamma(x);
    // Γ(x) < 0 on (−1,0), (−3,−2), ...
    const bool negative = x < 0.0 && static_cast<long long>(std::floor(x)) % 2 != 0;
    return {mag, negative ? kPi : 0.0};
  }
  return principal(detail::log_gamma_lanczos(z));
}

double log_gamma(double x) {
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "log_gamma: pole at non-positive integer " << x;
    throw DomainError(os.str());
  }
  return std::lgamma(x);
}

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("digamma: pole at non-positive integer");
  if (x < 0.0) {
    // ψ(1−x) − ψ(x) = π cot(πx)
    return digamma(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
  }
  double acc = 0.0;
  while (x < 16.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // Asymptotic Bernoulli series.
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
  return acc + std::log(x) - 0.5 / x - tail;
}

namespace {

struct SeriesOutcome {
  double value = 0.0;
  int terms = 0;
  double error = std::numeric_limits<double>::infinity();
  bool converged = false;
};

SeriesOutcome ml_power_series(double alpha, double z, const SeriesControl& ctl) {
  SeriesOutcome out;
  if (z == 0.0) {
    out.value = 1.0;
    out.terms = 1;
    out.error = 0.0;
    out.converged = true;
    return out;
  }
  const double lz = std::log(std::abs(z));
  const bool alternating = z < 0.0;
  double sum = 1.0;
  double max_term = 1.0;
  int small_run = 0;
  for (int k = 1; k <= ctl.k_max; ++k) {
    const double lmag = k * lz - std::lgamma(alpha * k + 1.0);
    if (lmag > 700.0) return out;  // overflow guard
    double term = std::exp(lmag);
    if (alternating && (k % 2 == 1)) term = -term;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    small_run = (std::abs(term) <= ctl.rel_tol * std::abs(sum)) ? small_run + 1 : 0;
    if (small_run >= 2 && k >= ctl.k_min) {
      out.value = sum;
      out.terms = k + 1;
      out.error = (4.0 * kEps * max_term * std::sqrt(static_cast<double>(k)) + std::abs(term)) /
                  std::abs(sum);
      out.converged = true;
      return out;
    }
  }
  return out;
}

// E_α(−x), x > 0, asymptotic: Σ_{k≥1} (−1)^{k−1} x^{−k} Γ(αk) sin(παk)/π.
SeriesOutcome ml_asymptotic(double alpha, double x, const SeriesControl& ctl) {
  SeriesOutcome out;
  const double lx = std::log(x);
  double sum = 0.0;
  double prev_bound = std::numeric_limits<double>::infinity();
  int small_run = 0;
  for (int k = 1; k <= ctl.k_max; ++k) {
    const double bound = std::exp(std::lgamma(alpha * k) - k * lx) / kPi;
    if (bound > prev_bound && k > 2) {
      // Past the smallest term of a divergent expansion.
      out.value = sum;
      out.terms = k - 1;
      out.error = prev_bound / std::max(std::abs(sum), std::numeric_limits<double>::min());
      out.converged = std::abs(sum) > 0.0;
      return out;
    }
    double term = bound * sin_pi(alpha * k);
    if (k % 2 == 0) term = -term;
    sum += term;
    prev_bound = bound;
    small_run = (bound <= ctl.rel_tol * std::abs(sum)) ? small_run + 1 : 0;
    if (small_run >= 2 && k >= ctl.k_min) {
      out.value = sum;
      out.terms = k;
      out.error = bound / std::abs(sum) + 4.0 * kEps;
      out.converged = true;
      return out;
    }
  }
  out.value = sum;
  out.terms = ctl.k_max;
  out.error = prev_bound / std::max(std::abs(sum), std::numeric_limits<double>::min());
  out.converged = std::abs(sum) > 0.0;
  return out;
}

// ∫_0^∞ e^{−rt} K_α^{±}(r) dr with
// K^{±}(r) = sin(απ)/π · r^{α−1} / (r^{2α} ± 2 r^α cos(απ) + 1),
// in log variables r = e^u. "+" gives E_α(−t^α) for α ∈ (0,1).
double ml_kernel_integral(double alpha, double t, bool plus_sign) {
  const double s = std::sin(kPi * alpha);
  const double c = std::cos(kPi * alpha) * (plus_sign ? 2.0 : -2.0);
  auto integrand = [=](double u) {
    const double ra = std::exp(alpha * u);
    const double decay = t * std::exp(u);
    if (decay > 745.0) return 0.0;
    return s / kPi * ra / (ra * ra + c * ra + 1.0) * std::exp(-decay);
  };
  const double u_lo = -745.0 / alpha;
  const double u_hi = std::log(745.0 / t);
  std::vector<double> pts = {std::max(u_lo, -40.0 / alpha - 40.0)};
  if (0.0 > pts.front() && 0.0 < u_hi) pts.push_back(0.0);
  const double u_t = -std::log(t);
  if (u_t > pts.back() && u_t < u_hi) pts.push_back(u_t);
  if (u_hi > pts.back()) pts.push_back(u_hi);
  std::sort(pts.begin(), pts.end());
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-14;
  opt.max_intervals = 20000;
  auto r = quad::integrate_breakpoints(integrand, pts, opt);
  if (!r.converged && r.error <= 1e-12 * std::abs(r.value)) return r.value;
  return quad::value_or_throw(r, "mittag_leffler integral representation");
}

}  // namespace

MittagLefflerValue mittag_leffler_eval(double alpha, double z, const SeriesControl& ctl) {
  ctl.validate();
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "mittag_leffler: alpha must lie in (0,1], got " << alpha;
    throw DomainError(os.str());
  }
  if (!std::isfinite(z)) throw DomainError("mittag_leffler: non-finite argument");
  MittagLefflerValue v;
  if (alpha == 1.0) {
    if (z > 709.0) throw DomainError("mittag_leffler: overflow (z too large)");
    v.value = std::exp(z);
    v.method = MittagLefflerMethod::exponential;
    v.terms = 0;
    v.error_estimate = kEps;
    return v;
  }

  if (z >= 0.0) {
    auto s = ml_power_series(alpha, z, ctl);
    if (s.converged) {
      v = {s.value, MittagLefflerMethod::power_series, s.terms, s.error};
      return v;
    }
    const double t = std::pow(z, 1.0 / alpha);
    if (t > 709.0) throw DomainError("mittag_leffler: overflow (z^{1/alpha} too large)");
    const double corr = ml_kernel_integral(alpha, t, /*plus_sign=*/false);
    v.value = std::exp(t) / alpha - corr;
    v.method = MittagLefflerMethod::exponential;
    v.error_estimate = 1e-13;
    return v;
  }

  const double x = -z;
  SeriesOutcome best;
  MittagLefflerMethod best_method = MittagLefflerMethod::power_series;
  if (x <= 5.0) {
    best = ml_power_series(alpha, z, ctl);
  } else {
    auto a = ml_asymptotic(alpha, x, ctl);
    if (a.converged && a.error <= kMittagLefflerAccept) {
      return {a.value, MittagLefflerMethod::asymptotic, a.terms, a.error};
    }
    auto s = ml_power_series(alpha, z, ctl);
    if (s.converged && (!a.converged || s.error < a.error)) {
      best = s;
    } else {
      best = a;
      best_method = MittagLefflerMethod::asymptotic;
    }
  }
  if (best.converged && best.error <= kMittagLefflerAccept) {
    return {best.value, best_method, best.terms, best.error};
  }
  const double t = std::pow(x, 1.0 / alpha);
  v.value = ml_kernel_integral(alpha, t, /*plus_sign=*/true);
  v.method = MittagLefflerMethod::integral;
  v.error_estimate = 1e-13;
  return v;
}

double mittag_leffler(double alpha, double z, const SeriesControl& ctl) {
  return mittag_leffler_eval(alpha, z, ctl).value;
}

}  // namespace geostable
