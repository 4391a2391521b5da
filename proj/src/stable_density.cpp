#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "geostable/errors.hpp"
#include "geostable/quadrature.hpp"
#include "geostable/transform.hpp"

namespace geostable {

namespace {

constexpr double kPi = std::numbers::pi;

// Standard S1 density f(y; α, β, σ = 1), α ≠ 1, α < 2, y > 0 (Zolotarev / Nolan).
double s1_density_positive(double alpha, double beta, double y) {
  const double tp = std::tan(0.5 * kPi * alpha);
  const double theta0 = std::atan(beta * tp) / alpha;
  const double lo = -theta0;
  const double hi = 0.5 * kPi;
  if (!(hi > lo)) return 0.0;
  const double am1 = alpha - 1.0;
  const double log_c0 = std::log(std::cos(alpha * theta0)) / am1 + alpha / am1 * std::log(y);
  auto log_g = [=](double phi) {
    return log_c0 + alpha / am1 * (std::log(std::cos(phi)) - std::log(std::sin(alpha * (theta0 + phi)))) +
           std::log(std::cos(alpha * theta0 + am1 * phi)) - std::log(std::cos(phi));
  };
  auto h = [&](double phi) {
    const double lg = log_g(phi);
    if (!std::isfinite(lg)) return 0.0;
    if (lg > 700.0) return 0.0;
    return std::exp(lg - std::exp(lg));
  };
  // Breakpoints where g crosses a few levels around 1 (the peak of g e^{−g}):
  // for large |y| the integrand is a narrow spike.
  std::vector<double> pts = {lo, hi};
  const double span = hi - lo;
  const double a0 = lo + 1e-12 * span, b0 = hi - 1e-12 * span;
  const double la0 = log_g(a0), lb0 = log_g(b0);
  if (std::isfinite(la0) && std::isfinite(lb0)) {
    for (double level : {std::log(60.0), std::log(8.0), 0.0, std::log(0.1), std::log(1e-4)}) {
      if ((la0 - level) * (lb0 - level) >= 0.0) continue;
      double a = a0, b = b0, la = la0;
      for (int it = 0; it < 200 && (b - a) > 1e-15 * span; ++it) {
        const double m = 0.5 * (a + b);
        const double lm = log_g(m);
        if (!std::isfinite(lm)) break;
        if ((lm < level) == (la < level)) {
          a = m;
          la = lm;
        } else {
          b = m;
        }
      }
      const double root = 0.5 * (a + b);
      if (root > lo && root < hi) pts.push_back(root);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  quad::Options opt;
  opt.abs_tol = 1e-18;
  opt.rel_tol = 1e-12;
  opt.max_intervals = 4000;
  auto r = quad::integrate_breakpoints(h, pts, opt);
  if (!r.converged && r.error > std::max(1e-9 * std::abs(r.value), 1e-15))
    quad::value_or_throw(r, "stable_density");
  return alpha / (kPi * std::abs(am1) * y) * r.value;
}

double s1_density(double alpha, double beta, double y) {
  if (y == 0.0) {
    const double tp = std::tan(0.5 * kPi * alpha);
    const double zeta = -beta * tp;
    const double theta0 = std::atan(beta * tp) / alpha;
    return std::tgamma(1.0 + 1.0 / alpha) * std::cos(theta0) /
           (kPi * std::pow(1.0 + zeta * zeta, 0.5 / alpha));
  }
  if (y < 0.0) return s1_density_positive(alpha, -beta, -y);
  return s1_density_positive(alpha, beta, y);
}

}  // namespace

double stable_density(double alpha, double theta, double x, double t) {
  check_admissible(alpha, theta);
  if (!(t > 0.0)) throw DomainError("stable_density: t must be positive");
  if (!std::isfinite(x)) return 0.0;
  if (alpha == 2.0) return std::exp(-x * x / (4.0 * t)) / (2.0 * std::sqrt(kPi * t));
  const PolarParams pp = feller_to_polar(alpha, theta);
  const double scale = pp.sigma * std::pow(t, 1.0 / alpha);
  return s1_density(alpha, pp.beta, x / scale) / scale;
}

}  // namespace geostable
