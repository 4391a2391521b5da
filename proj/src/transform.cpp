#include "geostable/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "geostable/errors.hpp"
#include "geostable/fft.hpp"
#include "geostable/quadrature.hpp"
#include "geostable/specfun.hpp"

namespace geostable {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }
}  // namespace

// ---------------------------------------------------------------- grid

void SpectralGrid::validate(std::size_t min_n) const {
  if (!is_power_of_two(n)) throw DomainError("SpectralGrid: n must be a power of two");
  if (n < min_n) {
    std::ostringstream os;
    os << "SpectralGrid: n must be >= " << min_n;
    throw DomainError(os.str());
  }
  if (!(x_extent > 0.0) || !std::isfinite(x_extent))
    throw DomainError("SpectralGrid: x_extent must be positive");
}

double SpectralGrid::dxi() const { return kPi / x_extent; }

double SpectralGrid::xi(std::size_t k) const {
  return (static_cast<double>(k) - 0.5 * static_cast<double>(n)) * dxi();
}

std::vector<double> SpectralGrid::xs() const {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = x(j);
  return v;
}

std::vector<double> SpectralGrid::xis() const {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = xi(k);
  return v;
}

// ---------------------------------------------------------------- inversion

namespace {

// p_j = (dξ/2π) Σ_k e^{−iξ_k x_j} φ_k on the centred grids.
std::vector<double> invert_samples(const std::vector<cplx>& phi, const SpectralGrid& g) {
  const std::size_t n = g.n;
  std::vector<cplx> buf(n);
  for (std::size_t k = 0; k < n; ++k) buf[k] = (k % 2 ? -1.0 : 1.0) * phi[k];
  fft::transform(buf, -1);
  const double half_sign = ((n / 2) % 2) ? -1.0 : 1.0;
  const double c = g.dxi() / (2.0 * kPi);
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j) p[j] = c * half_sign * (j % 2 ? -1.0 : 1.0) * buf[j].real();
  return p;
}

}  // namespace

DensityResult cf_to_density(const CharFn& cf, const SpectralGrid& grid, const DensityOptions& opt) {
  grid.validate();
  const std::size_t n = grid.n;
  std::vector<cplx> phi(n);
  for (std::size_t k = 0; k < n; ++k) phi[k] = cf(grid.xi(k));

  if (opt.check_hermitian) {
    for (std::size_t k = 1; k < n; k += std::max<std::size_t>(1, n / 64)) {
      const cplx a = phi[k];
      const cplx b = phi[n - k];  // ξ_{n−k} = −ξ_k
      if (std::abs(a - std::conj(b)) > 1e-10 * std::max(1.0, std::abs(a))) {
        std::ostringstream os;
        os << "cf_to_density: characteristic function is not Hermitian at xi=" << grid.xi(k);
        throw DomainError(os.str());
      }
    }
  }

  DensityResult res;
  res.x = grid.xs();
  const double edge = std::max(std::abs(phi[0]), std::abs(cf(-grid.xi(0))));
  const bool aliased = edge >= opt.aliasing_tol;
  if (aliased && opt.check_aliasing && !opt.allow_window) {
    std::ostringstream os;
    os << "cf_to_density: |cf| = " << edge << " at the grid edge xi=" << grid.xi_max()
       << " (need < " << opt.aliasing_tol << "); refine dx";
    throw AliasingError(os.str());
  }
  res.density = invert_samples(phi, grid);
  if (aliased && opt.allow_window) {
    const double width = grid.xi_max() / std::sqrt(std::log(edge / (0.1 * opt.aliasing_tol)));
    std::vector<cplx> damped(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double u = grid.xi(k) / width;
      damped[k] = phi[k] * std::exp(-u * u);
    }
    auto windowed = invert_samples(damped, grid);
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(windowed[j] - res.density[j]));
    res.density = std::move(windowed);
    res.windowed = true;
    res.window_difference = diff;
    res.warnings.push_back("gaussian window applied; slowly decaying characteristic function");
  }
  double mass = 0.0, mn = res.density.empty() ? 0.0 : res.density[0];
  for (double v : res.density) {
    mass += v;
    mn = std::min(mn, v);
  }
  res.mass = mass * grid.dx();
  res.min_value = mn;
  if (mn < -1e-6) {
    std::ostringstream os;
    os << "negative density excursion " << mn;
    res.warnings.push_back(os.str());
  }
  return res;
}

DensityResult stable_density_fft(double alpha, double theta, double t, const SpectralGrid& grid,
                                 const DensityOptions& opt) {
  check_admissible(alpha, theta);
  if (!(t > 0.0)) throw DomainError("stable_density_fft: t must be positive");
  return cf_to_density([=](double xi) { return std::exp(-t * psi(alpha, theta, xi)); }, grid, opt);
}

// ---------------------------------------------------------------- Gil–Pelaez

double tail_prob_gilpelaez(const CharFn& cf, double x) {
  if (!std::isfinite(x)) return x > 0 ? 0.0 : 1.0;
  auto f = [&](double xi) {
    if (xi == 0.0) return 0.0;
    return (std::exp(cplx(0.0, -xi * x)) * cf(xi)).imag() / xi;
  };
  // Cutoff where the integrand envelope |φ|/ξ is negligible.
  double cut = 1.0;
  while (std::abs(cf(cut)) / cut > 1e-13) {
    cut *= 2.0;
    if (cut > 1e9) throw ConvergenceError("tail_prob_gilpelaez: characteristic function decays too slowly");
  }
  const double period = 2.0 * kPi / std::max(std::abs(x), 1.0);
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  opt.max_intervals = 2000;
  double total = 0.0;
  bool ok = true;
  // First piece with geometric refinement toward ξ = 0.
  const double first = std::min(period, cut);
  std::vector<double> pts;
  for (int j = 40; j >= 1; --j) pts.push_back(first * std::ldexp(1.0, -j));
  pts.insert(pts.begin(), 0.0);
  pts.push_back(first);
  auto r0 = quad::integrate_breakpoints(f, pts, opt);
  total += r0.value;
  ok = ok && r0.converged;
  for (double a = first; a < cut; a += period) {
    auto r = quad::integrate(f, a, std::min(a + period, cut), opt);
    total += r.value;
    ok = ok && r.converged;
  }
  if (!ok) throw ConvergenceError("tail_prob_gilpelaez: oscillatory quadrature did not converge");
  return std::clamp(0.5 + total / kPi, 0.0, 1.0);
}

std::vector<cplx> empirical_cf(const std::vector<double>& samples, const std::vector<double>& xis,
                               int threads) {
  if (samples.empty()) throw DomainError("empirical_cf: empty sample");
  const std::size_t n = samples.size();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, 64);
  std::vector<cplx> out(xis.size());
  for (std::size_t q = 0; q < xis.size(); ++q) {
    const double xi = xis[q];
    std::vector<double> re(workers, 0.0), im(workers, 0.0);
    auto work = [&](std::size_t w) {
      const std::size_t b = n * w / workers, e = n * (w + 1) / workers;
      double sr = 0.0, si = 0.0;
      for (std::size_t i = b; i < e; ++i) {
        sr += std::cos(xi * samples[i]);
        si += std::sin(xi * samples[i]);
      }
      re[w] = sr;
      im[w] = si;
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    double sr = 0.0, si = 0.0;
    for (std::size_t w = 0; w < workers; ++w) {
      sr += re[w];
      si += im[w];
    }
    out[q] = {sr / static_cast<double>(n), si / static_cast<double>(n)};
  }
  return out;
}

// ---------------------------------------------------------------- tails

double alpha_star(const ParamCurves& curves, double t) { return curves.alpha.max_on(0.0, t); }

double tail_asymptote_gs1(const ParamCurves& curves, double t, double x) {
  if (!(x > 0.0)) throw DomainError("tail_asymptote_gs1: x must be positive");
  if (!(t > 0.0)) throw DomainError("tail_asymptote_gs1: t must be positive");
  for (int i = 0; i <= 200; ++i) {
    const double s = t * i / 200.0;
    const double a = curves.alpha(s);
    if (!(a > 0.0 && a < 1.0)) throw DomainError("tail_asymptote_gs1: alpha(s) must lie in (0,1)");
    if (std::abs(curves.theta(s) + a) > 1e-12)
      throw DomainError("tail_asymptote_gs1: requires theta(s) = -alpha(s)");
  }
  const double a_star = alpha_star(curves, t);
  const double b = curves.b(0.0);
  auto f = [&](double s) {
    const double a = curves.alpha(s);
    return a * std::pow(x, -a);
  };
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-12;
  auto pts = curves.breakpoints(0.0, t);
  auto r = quad::integrate_breakpoints(f, pts, opt);
  return b / std::tgamma(1.0 - a_star) * quad::value_or_throw(r, "tail_asymptote_gs1");
}

TailConstants tail_constants_gs2(double alpha, double theta) {
  check_admissible(alpha, theta);
  if (alpha == 2.0) throw DomainError("tail_constants_gs2: alpha must be < 2");
  const double r = std::tan(0.5 * kPi * theta) / std::tan(0.5 * kPi * alpha);
  const double c = 0.5 * (1.0 - r);
  return {c, 1.0 - c};
}

double gs2_tail_coefficient(double alpha, double theta) {
  const auto tc = tail_constants_gs2(alpha, theta);
  return tc.c * cos_pi(0.5 * theta) / (std::tgamma(1.0 - alpha) * std::cos(0.5 * kPi * alpha));
}

double gs2_tail_coefficient_stated(double alpha, double theta) {
  const auto tc = tail_constants_gs2(alpha, theta);
  return tc.c / std::tgamma(1.0 - alpha);
}

double empirical_survival(const std::vector<double>& sorted, double x) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

TailReport tail_slope_fit(const std::vector<double>& samples, double q_lo, double q_hi,
                          int n_levels) {
  if (!(q_lo > 0.9 && q_lo < q_hi && q_hi < 1.0))
    throw DomainError("tail_slope_fit: need 0.9 < q_lo < q_hi < 1");
  if (n_levels < 3) throw DomainError("tail_slope_fit: need at least 3 levels");
  std::vector<double> s = samples;
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  const std::size_t exceed = static_cast<std::size_t>(std::floor(n * (1.0 - q_lo)));
  if (exceed < 200) {
    std::ostringstream os;
    os << "tail_slope_fit: only " << exceed << " exceedances above the q_lo quantile (need 200)";
    throw DomainError(os.str());
  }
  auto quantile = [&](double q) {
    const std::size_t idx = std::min(n - 1, static_cast<std::size_t>(std::floor(q * n)));
    return s[idx];
  };
  const double x_lo = quantile(q_lo), x_hi = quantile(q_hi);
  if (!(x_lo > 0.0) || !(x_hi > x_lo)) throw DomainError("tail_slope_fit: tail levels must be positive and distinct");
  TailReport rep;
  rep.exceedances = exceed;
  std::vector<double> lx, ly;
  for (int k = 0; k < n_levels; ++k) {
    const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(k) / (n_levels - 1));
    const double sv = empirical_survival(s, x);
    rep.levels.push_back(x);
    rep.survival.push_back(sv);
    if (sv > 0.0) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(sv));
    }
  }
  const std::size_t m = lx.size();
  if (m < 3) throw DomainError("tail_slope_fit: too few populated levels");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  rep.slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = ly[i] - my - rep.slope * (lx[i] - mx);
    rss += e * e;
  }
  rep.slope_stderr = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  return rep;
}

// ---------------------------------------------------------------- moments

namespace {
double integrate_curve(const Curve& b, double t, const std::function<double(double)>& g,
                       const char* what) {
  if (!(t >= 0.0)) throw DomainError(std::string(what) + ": t must be nonnegative");
  if (t == 0.0) return 0.0;
  std::vector<double> pts = {0.0};
  for (double k : b.breakpoints())
    if (k > 0.0 && k < t) pts.push_back(k);
  pts.push_back(t);
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  auto r = quad::integrate_breakpoints([&](double s) { return g(b(s)); }, pts, opt);
  return quad::value_or_throw(r, what);
}
}  // namespace

Moments gamma_inhom_moments(const Curve& b, double t) {
  const double mean = integrate_curve(b, t, [](double v) { return v; }, "gamma_inhom_moments");
  const double var = integrate_curve(b, t, [](double v) { return v * v; }, "gamma_inhom_moments");
  return {mean, var};
}

double mgf_gamma_inhom(const Curve& b, double t, double gamma, double K) {
  if (!(K > 0.0 && K < 1.0)) throw DomainError("mgf_gamma_inhom: need 0 < K < 1");
  if (std::abs(gamma) > 1.0 / K) throw DomainError("mgf_gamma_inhom: need |gamma| <= 1/K");
  for (int i = 0; i <= 1000; ++i) {
    const double bv = b(t * i / 1000.0);
    if (!(bv > 0.0 && bv < K)) throw DomainError("mgf_gamma_inhom: need 0 < b(s) < K");
  }
  const double e = integrate_curve(b, t, [gamma](double v) { return std::log1p(-gamma * v); },
                                   "mgf_gamma_inhom");
  return std::exp(-e);
}

}  // namespace geostable
