#include "geostable/levy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "geostable/errors.hpp"
#include "geostable/quadrature.hpp"
#include "geostable/transform.hpp"

namespace geostable {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Pole coincidences closer than this are treated as exact double poles.
constexpr double kExactTol = 1e-10;
// Closer than this (but not exact) the simple-pole terms cancel badly.
constexpr double kNearTol = 1e-3;

double dist_to_int(double v) { return std::abs(v - std::round(v)); }

struct SeriesSum {
  double value = 0.0;
  int terms = 0;
  double error = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool singular = false;
};

double roundoff_error(double max_term, int terms, double sum) {
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * kEps * max_term * std::sqrt(static_cast<double>(terms + 1)) / std::abs(sum);
}

// ν(x) = x^{−1} J(z), z = |x| b^{−1/α}, with
// J(z) = (1/2πi) ∫ z^{−u} Γ(u) sin(πρu)/sin(πu/α) du, ρ = c/α, c = (α − θ sign x)/2.

// Double pole at u = −l = −αj.
double double_pole(double alpha, double rho, double lz, int l, int j) {
  const double s = sin_pi(rho * l), co = cos_pi(rho * l);
  const double pre = alpha * std::exp(l * lz - std::lgamma(l + 1.0)) / kPi;
  return ((l + j) % 2 ? -1.0 : 1.0) * pre * (kPi * rho * co + s * (lz - digamma(l + 1.0)));
}

// Residues left of the contour: u = 0, u = −l, u = −αj. Converges for every z.
SeriesSum convergent_series(double alpha, double c, double z, const SeriesControl& ctl) {
  SeriesSum out;
  const double rho = c / alpha;
  const double lz = std::log(z);
  double sum = c, max_term = std::abs(c);
  int terms = 1;
  auto add = [&](double t) {
    sum += t;
    max_term = std::max(max_term, std::abs(t));
    ++terms;
  };
  bool done_l = false, done_j = false;
  int run = 0;
  for (int l = 1; l <= ctl.k_max; ++l) {
    const double q = l / alpha;
    const double dq = dist_to_int(q);
    const double env = std::exp(l * lz - std::lgamma(l + 1.0));
    if (dq < kExactTol * std::max(1.0, q)) {
      add(double_pole(alpha, rho, lz, l, static_cast<int>(std::lround(q))));
    } else {
      if (dq < kNearTol) out.singular = true;
      add((l % 2 ? -1.0 : 1.0) * sin_pi(rho * l) / sin_pi(q) * env);
    }
    const double bound = env * (1.0 + std::abs(lz)) / std::max(dq, kNearTol);
    run = (l > z && bound <= ctl.rel_tol * std::abs(sum)) ? run + 1 : 0;
    if (run >= 2 && l >= ctl.k_min) {
      done_l = true;
      break;
    }
  }
  run = 0;
  for (int j = 1; j <= ctl.k_max; ++j) {
    const double aj = alpha * j;
    const double da = dist_to_int(aj);
    const double env = alpha * std::exp(aj * lz - std::lgamma(1.0 + aj));
    if (da >= kExactTol * std::max(1.0, aj)) {
      if (da < kNearTol) out.singular = true;
      add((j % 2 ? -1.0 : 1.0) * sin_pi(c * j) / sin_pi(aj) * env);
    }
    const double bound = env / std::max(da, kNearTol);
    run = (aj > z && bound <= ctl.rel_tol * std::abs(sum)) ? run + 1 : 0;
    if (run >= 2 && j >= ctl.k_min) {
      done_j = true;
      break;
    }
  }
  out.value = sum;
  out.terms = terms;
  out.converged = done_l && done_j;
  out.error = out.converged ? roundoff_error(max_term, terms, sum) + ctl.rel_tol
                            : std::numeric_limits<double>::infinity();
  if (out.singular) out.error = std::max(out.error, 1e-6);
  return out;
}

// Residues right of the contour, u = αj: asymptotic in z, truncated at the
// smallest term.
SeriesSum asymptotic_series(double alpha, double c, double z, const SeriesControl& ctl) {
  SeriesSum out;
  const double lz = std::log(z);
  double sum = 0.0, prev = std::numeric_limits<double>::infinity();
  out.converged = true;
  for (int j = 1; j <= ctl.k_max; ++j) {
    const double aj = alpha * j;
    const double env = alpha / kPi * std::exp(std::lgamma(aj) - aj * lz);
    if (j >= 2 && env > prev) {
      out.value = sum;
      out.terms = j - 1;
      out.error = sum != 0.0 ? prev / std::abs(sum) : std::numeric_limits<double>::infinity();
      return out;
    }
    sum += (j % 2 ? 1.0 : -1.0) * env * sin_pi(c * j);
    prev = env;
    if (env <= ctl.rel_tol * std::abs(sum) && j >= ctl.k_min) {
      out.value = sum;
      out.terms = j;
      out.error = env / std::abs(sum) + 4.0 * kEps;
      return out;
    }
  }
  out.value = sum;
  out.terms = ctl.k_max;
  out.error = sum != 0.0 ? prev / std::abs(sum) : std::numeric_limits<double>::infinity();
  return out;
}

void check_gs2_args(double alpha, double theta, double bv, double x) {
  check_admissible(alpha, theta);
  if (x == 0.0 || !std::isfinite(x)) throw DomainError("levy density: x must be finite and nonzero");
  if (!(bv > 0.0)) throw DomainError("levy density: b(t) must be positive");
}

// The contour integral itself on Re u = c0, folded onto v ≥ 0 by conjugate symmetry.
// sin(πρu)/sin(πu/α) is written through e^{2iw}, |e^{2iw}| ≤ 1, to stay finite for large v.
SeriesSum mellin_barnes_line(double alpha, double c, double z) {
  const double rho = c / alpha;
  const double c0 = 0.5 * std::min(alpha, 1.0);
  const double lz = std::log(z);
  double max_f = 0.0;
  auto f = [&](double v) {
    const cplx u(c0, v);
    const cplx w1 = kPi * rho * u, w2 = kPi * u / alpha;
    const cplx i(0.0, 1.0);
    const cplx ratio = std::exp(-i * (w1 - w2)) * (1.0 - std::exp(2.0 * i * w1)) / (1.0 - std::exp(2.0 * i * w2));
    const double val = (std::exp(log_gamma(u) - u * lz) * ratio).real();
    max_f = std::max(max_f, std::abs(val));
    return val;
  };
  const double v_max = 45.0;
  const double step = std::min(1.0, kPi / std::max(std::abs(lz), 1.0));
  std::vector<double> pts;
  for (double v = 0.0; v < v_max; v += step) pts.push_back(v);
  pts.push_back(v_max);
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-11;
  opt.max_intervals = 2000;
  const auto r = quad::integrate_breakpoints(f, pts, opt);
  SeriesSum out;
  out.value = r.value / kPi;
  out.terms = r.evaluations;
  if (out.value != 0.0)
    out.error = (r.error + 100.0 * kEps * max_f * v_max) / kPi / std::abs(out.value);
  out.converged = std::isfinite(out.error);
  return out;
}

}  // namespace

double levy_gamma_inhom(const Curve& b, double x, double t) {
  if (!(x > 0.0)) throw DomainError("levy_gamma_inhom: x must be positive");
  const double bv = b(t);
  if (!(bv > 0.0)) throw DomainError("levy_gamma_inhom: b(t) must be positive");
  return std::exp(-x / bv) / x;
}

LevyValue levy_gs1_sub(const ParamCurves& curves, double x, double t) {
  if (!(x > 0.0)) throw DomainError("levy_gs1_sub: x must be positive");
  const double a = curves.alpha(t);
  const double th = curves.theta(t);
  const double bv = curves.b(t);
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("levy_gs1_sub: alpha(t) must lie in (0,1]");
  if (std::abs(th + a) > 1e-12) throw DomainError("levy_gs1_sub: requires theta(t) = -alpha(t)");
  if (!(bv > 0.0)) throw DomainError("levy_gs1_sub: b must be positive");
  const auto ml = mittag_leffler_eval(a, -std::pow(x, a) / bv);
  LevyValue v;
  v.value = a / x * ml.value;
  v.method = "mittag_leffler";
  v.terms = ml.terms;
  v.error_estimate = ml.error_estimate;
  return v;
}

LevyValue levy_gs2_oracle(double alpha, double theta, const Curve& b, double x, double t) {
  const double bv = b(t);
  check_gs2_args(alpha, theta, bv, x);
  const double ax = std::abs(x);
  const double s1 = alpha * std::log(ax);
  const double s2 = std::log(bv);
  const double s_lo = std::min(s1, s2) - 50.0;
  const double s_hi = s2 + std::log(800.0);
  auto f = [&](double s) {
    const double tau = std::exp(s);
    const double ls = -s / alpha;
    const double p = stable_density(alpha, theta, x * std::exp(ls), 1.0);
    if (p == 0.0) return 0.0;
    return std::exp(ls - tau / bv) * p;
  };
  std::vector<double> pts = {s_lo};
  for (double s : {std::min(s1, s2), std::max(s1, s2)})
    if (s > pts.back() && s < s_hi) pts.push_back(s);
  pts.push_back(s_hi);
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-9;
  opt.max_intervals = 2000;
  auto r = quad::integrate_breakpoints(f, pts, opt);
  LevyValue v;
  v.value = quad::value_or_throw(r, "levy_gs2_oracle");
  v.method = "oracle";
  v.terms = r.evaluations;
  v.error_estimate = r.value != 0.0 ? r.error / std::abs(r.value) : 0.0;
  return v;
}

LevyValue levy_gs2_series(double alpha, double theta, const Curve& b, double x, double t,
                          const Gs2SeriesOptions& opt) {
  opt.control.validate();
  const double bv = b(t);
  check_gs2_args(alpha, theta, bv, x);
  if (alpha == 2.0) throw DomainError("levy_gs2_series: alpha must lie in (0,1) or (1,2)");
  const double sgn = x > 0 ? 1.0 : -1.0;
  const double ax = std::abs(x);
  const double c = 0.5 * (alpha - theta * sgn);
  const double z = ax * std::pow(bv, -1.0 / alpha);
  LevyValue best;
  best.error_estimate = std::numeric_limits<double>::infinity();
  bool singular = false;
  // The convergent sum has terms of size up to e^z.
  if (z < 40.0) {
    const auto conv = convergent_series(alpha, c, z, opt.control);
    singular = conv.singular;
    if (conv.converged && conv.error < best.error_estimate)
      best = {conv.value / ax, "series_convergent", conv.terms, conv.error, conv.singular};
  }
  if (z > 1.0) {
    const auto asym = asymptotic_series(alpha, c, z, opt.control);
    if (asym.converged && asym.error < best.error_estimate)
      best = {asym.value / ax, "series_asymptotic", asym.terms, asym.error, false};
  }
  if (best.error_estimate > opt.accept_tol && c > 0.0) {
    const auto line = mellin_barnes_line(alpha, c, z);
    if (line.converged && line.error < best.error_estimate)
      best = {line.value / ax, "mellin_barnes", line.terms, line.error, false};
  }
  if (best.error_estimate <= opt.accept_tol) {
    // One-sided laws: round-off may leave a tiny negative residue.
    if (best.value < 0.0 && std::abs(best.value) <= 1e-300) best.value = 0.0;
    return best;
  }
  if (!opt.allow_oracle_fallback) {
    std::ostringstream os;
    os << "levy_gs2_series: series unusable at x=" << x << " (alpha=" << alpha
       << (singular ? ", near-coincident poles" : "") << ", error estimate " << best.error_estimate
       << ")";
    throw ConvergenceError(os.str());
  }
  auto v = levy_gs2_oracle(alpha, theta, b, x, t);
  v.singular_flag = singular;
  return v;
}

double laplace_exponent_check(double alpha, double b, double lambda) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("laplace_exponent_check: alpha must lie in (0,1)");
  if (!(b > 0.0)) throw DomainError("laplace_exponent_check: b must be positive");
  if (!(lambda > 0.0)) throw DomainError("laplace_exponent_check: lambda must be positive");
  // x = e^u; ∫ (e^{−λx} − 1) α E_α(−x^α/b) du
  auto f = [&](double u) {
    const double x = std::exp(u);
    return -std::expm1(-lambda * x) * -alpha * mittag_leffler(alpha, -std::exp(alpha * u) / b);
  };
  const double u_lo = std::log(1e-17 / lambda);
  const double u_knee = -std::log(lambda);
  // Beyond u_hi e^{−λx} vanishes and E_α has its two-term asymptote.
  const double u_hi = std::max(std::log(60.0 / lambda), (std::log(b) + 3.0 * std::log(10.0)) / alpha);
  std::vector<double> pts = {u_lo, u_knee, u_hi};
  std::sort(pts.begin(), pts.end());
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-11;
  opt.max_intervals = 4000;
  auto r = quad::integrate_breakpoints(f, pts, opt);
  double v = quad::value_or_throw(r, "laplace_exponent_check");
  const double e1 = std::exp(-alpha * u_hi);
  const double rg2 = (1.0 - 2.0 * alpha <= 0.0 && 1.0 - 2.0 * alpha == std::floor(1.0 - 2.0 * alpha))
                         ? 0.0
                         : 1.0 / std::tgamma(1.0 - 2.0 * alpha);
  const double rg3 = (1.0 - 3.0 * alpha <= 0.0 && 1.0 - 3.0 * alpha == std::floor(1.0 - 3.0 * alpha))
                         ? 0.0
                         : 1.0 / std::tgamma(1.0 - 3.0 * alpha);
  // E_α(−z) ≈ z^{−1}/Γ(1−α) − z^{−2}/Γ(1−2α) + z^{−3}/Γ(1−3α), z = e^{αu}/b
  v += -(b * e1 / std::tgamma(1.0 - alpha) - b * b * e1 * e1 * rg2 / 2.0 +
         b * b * b * e1 * e1 * e1 * rg3 / 3.0);
  return v;
}

LevyDensity make_gamma_inhom_levy(const Curve& b) {
  LevyDensity d;
  d.support = LevySupport::positive_halfline;
  d.eval = [b](double x, double t) {
    LevyValue v;
    v.value = x > 0.0 ? levy_gamma_inhom(b, x, t) : 0.0;
    v.method = "closed_form";
    return v;
  };
  return d;
}

LevyDensity make_gs1_levy(const ParamCurves& curves) {
  LevyDensity d;
  d.support = LevySupport::positive_halfline;
  d.eval = [curves](double x, double t) {
    if (x <= 0.0) return LevyValue{0.0, "closed_form", 0, 0.0, false};
    return levy_gs1_sub(curves, x, t);
  };
  return d;
}

LevyDensity make_gs2_levy(double alpha, double theta, const Curve& b, const Gs2SeriesOptions& opt) {
  check_admissible(alpha, theta);
  LevyDensity d;
  const bool one_sided = alpha < 1.0 && std::abs(std::abs(theta) - alpha) < 1e-12;
  const bool positive = one_sided && theta < 0.0;
  d.support = positive ? LevySupport::positive_halfline : LevySupport::full_line;
  d.eval = [=](double x, double t) {
    if (one_sided && (positive ? x <= 0.0 : x >= 0.0)) return LevyValue{0.0, "support", 0, 0.0, false};
    if (alpha == 2.0) return levy_gs2_oracle(alpha, theta, b, x, t);
    return levy_gs2_series(alpha, theta, b, x, t, opt);
  };
  return d;
}

double levy_weighted_integral(const LevyDensity& nu, double t,
                              const std::function<double(double)>& weight, double x_min,
                              double x_max) {
  if (!(x_min > 0.0 && x_max > x_min)) throw DomainError("levy_weighted_integral: bad range");
  const double u_lo = std::log(x_min), u_hi = std::log(x_max);
  std::vector<double> pts;
  for (double u = u_lo; u < u_hi; u += 2.0) pts.push_back(u);
  pts.push_back(u_hi);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-9;
  double total = 0.0;
  for (double side : {1.0, -1.0}) {
    if (side < 0 && nu.support == LevySupport::positive_halfline) continue;
    auto f = [&](double u) {
      const double x = side * std::exp(u);
      return weight(x) * nu(x, t) * std::exp(u);
    };
    auto r = quad::integrate_breakpoints(f, pts, opt);
    total += quad::value_or_throw(r, "levy_weighted_integral");
  }
  return total;
}

double levy_integrability(const LevyDensity& nu, double t) {
  return levy_weighted_integral(nu, t, [](double x) { return std::min(x * x, 1.0); });
}

CharTriplet gs2_triplet(double alpha, double theta, const Curve& b, const Gs2SeriesOptions& opt) {
  CharTriplet tr;
  tr.levy = make_gs2_levy(alpha, theta, b, opt);
  tr.compensated = alpha > 1.0;
  tr.drift = 0.0;
  tr.diffusion = 0.0;
  return tr;
}

cplx levy_khintchine_exponent(const CharTriplet& tr, double xi, double t) {
  if (xi == 0.0) return {0.0, 0.0};
  const double axi = std::abs(xi);
  quad::Options opt;
  opt.abs_tol = 1e-11;
  opt.rel_tol = 1e-9;
  opt.max_intervals = 4000;
  const double x_split = 1.0 / axi;
  const double x_osc = std::max(2000.0, 2000.0 / axi);
  const double period = 2.0 * kPi / axi;
  cplx total = cplx(0.0, xi * tr.drift) - tr.diffusion * xi * xi;
  for (double side : {1.0, -1.0}) {
    if (side < 0 && tr.levy.support == LevySupport::positive_halfline) continue;
    auto kernel = [&](double x) {
      cplx k = std::exp(cplx(0.0, xi * x)) - 1.0;
      if (tr.compensated) k -= cplx(0.0, xi * x);
      return k;
    };
    // Small jumps in log variables.
    auto f_log = [&](double u) {
      const double x = side * std::exp(u);
      return kernel(x) * tr.levy(x, t) * std::exp(u);
    };
    std::vector<double> pts;
    for (double u = std::log(1e-14 * x_split); u < std::log(x_split); u += 2.0) pts.push_back(u);
    pts.push_back(std::log(x_split));
    total += quad::value_or_throw(quad::integrate_breakpoints(f_log, pts, opt), "levy_khintchine");
    // Oscillatory middle, one period per panel.
    auto f_lin = [&](double x) { return kernel(side * x) * tr.levy(side * x, t); };
    for (double a = x_split; a < x_osc; a += period) {
      total += quad::value_or_throw(quad::integrate(f_lin, a, std::min(a + period, x_osc), opt),
                                    "levy_khintchine");
    }
    // Far jumps: non-oscillating part only; ∫ e^{iξx}ν is O(ν(x_osc)/ξ) there.
    auto f_far = [&](double u) {
      const double x = std::exp(u);
      cplx k = -1.0;
      if (tr.compensated) k -= cplx(0.0, xi * side * x);
      return k * tr.levy(side * x, t) * x;
    };
    std::vector<double> far;
    for (double u = std::log(x_osc); u < std::log(1e14); u += 2.0) far.push_back(u);
    far.push_back(std::log(1e14));
    total += quad::value_or_throw(quad::integrate_breakpoints(f_far, far, opt), "levy_khintchine");
  }
  return total;
}

}  // namespace geostable
