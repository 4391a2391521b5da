#include "geostable/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geostable/errors.hpp"
#include "geostable/fft.hpp"
#include "geostable/quadrature.hpp"
#include "geostable/specfun.hpp"

namespace geostable {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTaylorOrder = 8;

// Frequency of FFT bin k (standard ordering).
double bin_freq(const SpectralGrid& g, std::size_t k) {
  const double kk = k < g.n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(g.n);
  return kk * g.dxi();
}

std::vector<cplx> forward(const GridFunction& f) {
  std::vector<cplx> buf = f.values;
  fft::transform(buf, -1);
  return buf;
}

GridFunction backward(const SpectralGrid& g, std::vector<cplx> spec) {
  fft::transform(spec, +1);
  const double inv = 1.0 / static_cast<double>(g.n);
  for (auto& v : spec) v *= inv;
  return {g, std::move(spec)};
}

void check_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid.n != b.grid.n || a.grid.x_extent != b.grid.x_extent)
    throw DomainError("grid functions live on different grids");
}

// exp(∫_s^t η(±ξ)) on every bin; Hermitian symbols are evaluated on ξ ≥ 0 only.
std::vector<cplx> propagator_multiplier(const SpectralGrid& g, double s, double t,
                                        const SymbolEval& sym, bool reflect) {
  const std::size_t n = g.n;
  std::vector<cplx> m(n);
  const bool hermitian = sym.kind != SymbolKind::custom;
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = bin_freq(g, k);
    if (hermitian && xi < 0.0 && k != n / 2) continue;
    m[k] = std::exp(accumulated_exponent(sym, s, t, reflect ? -xi : xi));
  }
  if (hermitian)
    for (std::size_t k = n / 2 + 1; k < n; ++k) m[k] = std::conj(m[n - k]);
  return m;
}

GridFunction multiply(const GridFunction& f, const std::vector<cplx>& m) {
  auto spec = forward(f);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= m[k];
  return backward(f.grid, std::move(spec));
}

// Band-limited interpolant of f and its derivatives.
class SpectralInterpolant {
 public:
  explicit SpectralInterpolant(const GridFunction& f) : g_(f.grid) {
    auto spec = forward(f);
    const double inv = 1.0 / static_cast<double>(g_.n);
    for (int d = 0; d <= kTaylorOrder; ++d) {
      coef_[d].resize(g_.n);
      for (std::size_t k = 0; k < g_.n; ++k) {
        cplx c = spec[k] * inv;
        for (int m = 0; m < d; ++m) c *= cplx(0.0, bin_freq(g_, k));
        coef_[d][k] = c;
      }
    }
  }
  // d^m f / dx^m at y; zero outside the window.
  double operator()(double y, int m = 0) const {
    if (y < -g_.x_extent || y >= g_.x_extent) return 0.0;
    const double u = y + g_.x_extent;
    const std::size_t n = g_.n, half = n / 2;
    const cplx w = std::exp(cplx(0.0, g_.dxi() * u));
    const auto& c = coef_[m];
    cplx acc = c[0], p = 1.0;
    for (std::size_t k = 1; k < half; ++k) {
      p *= w;
      acc += c[k] * p;
    }
    p = 1.0;
    const cplx wc = std::conj(w);
    for (std::size_t j = 1; j <= half; ++j) {
      p *= wc;
      acc += c[n - j] * p;
    }
    return acc.real();
  }

 private:
  SpectralGrid g_;
  std::vector<cplx> coef_[kTaylorOrder + 1];
};

}  // namespace

// ---------------------------------------------------------------- GridFunction

GridFunction GridFunction::sample(const SpectralGrid& grid, const std::function<double(double)>& f) {
  grid.validate();
  GridFunction out{grid, std::vector<cplx>(grid.n)};
  for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = f(grid.x(j));
  return out;
}

GridFunction GridFunction::from_real(const SpectralGrid& grid, const std::vector<double>& v) {
  grid.validate();
  if (v.size() != grid.n) throw DomainError("GridFunction: value count does not match grid");
  GridFunction out{grid, std::vector<cplx>(v.begin(), v.end())};
  return out;
}

std::vector<double> GridFunction::real() const {
  std::vector<double> r(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) r[i] = values[i].real();
  return r;
}

bool GridFunction::decays(double tol) const {
  const double mx = sup_norm();
  if (mx == 0.0) return true;
  const std::size_t edge = std::max<std::size_t>(1, values.size() / 20);
  for (std::size_t i = 0; i < edge; ++i) {
    if (std::abs(values[i]) > tol * mx) return false;
    if (std::abs(values[values.size() - 1 - i]) > tol * mx) return false;
  }
  return true;
}

void GridFunction::check_decay(double tol) const {
  if (!decays(tol)) {
    std::ostringstream os;
    os << "grid function fails the decay check (outer 5% of the window above " << tol
       << " of its maximum); widen x_extent";
    throw DomainError(os.str());
  }
}

double GridFunction::integral() const {
  double s = 0.0;
  for (const auto& v : values) s += v.real();
  return s * grid.dx();
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return std::sqrt(s * grid.dx());
}

GridFunction gaussian_preset(const SpectralGrid& grid, double mean, double sd) {
  if (!(sd > 0.0)) throw DomainError("gaussian preset: sd must be positive");
  return GridFunction::sample(grid, [=](double x) {
    const double u = (x - mean) / sd;
    return std::exp(-0.5 * u * u) / (sd * std::sqrt(2.0 * kPi));
  });
}

GridFunction bump_preset(const SpectralGrid& grid, double centre, double radius) {
  if (!(radius > 0.0)) throw DomainError("bump preset: radius must be positive");
  auto f = GridFunction::sample(grid, [=](double x) {
    const double r = (x - centre) / radius;
    return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
  });
  const double mass = f.integral();
  if (mass > 0.0)
    for (auto& v : f.values) v /= mass;
  return f;
}

// ---------------------------------------------------------------- operators

GridFunction apply_multiplier(const GridFunction& f, const std::function<cplx(double)>& m) {
  std::vector<cplx> mult(f.grid.n);
  for (std::size_t k = 0; k < f.grid.n; ++k) mult[k] = m(bin_freq(f.grid, k));
  return multiply(f, mult);
}

GridFunction propagate(const GridFunction& f, double s, double t, const SymbolEval& sym,
                       bool check_decay) {
  if (!(s <= t)) throw DomainError("propagate: need s <= t");
  if (check_decay) f.check_decay();
  if (s == t) return f;
  return multiply(f, propagator_multiplier(f.grid, s, t, sym, false));
}

GridFunction propagate_adjoint(const GridFunction& f, double s, double t, const SymbolEval& sym,
                               bool check_decay) {
  if (!(s <= t)) throw DomainError("propagate_adjoint: need s <= t");
  if (check_decay) f.check_decay();
  if (s == t) return f;
  return multiply(f, propagator_multiplier(f.grid, s, t, sym, true));
}

GridFunction generator_apply(const GridFunction& f, double t, const SymbolEval& sym) {
  f.check_decay();
  return apply_multiplier(f, [&](double xi) { return xi == 0.0 ? cplx(0.0) : sym.eval(xi, t); });
}

GridFunction riesz_spectral(const GridFunction& f, double alpha, double theta) {
  check_admissible(alpha, theta);
  return apply_multiplier(f, [=](double xi) { return -std::conj(psi(alpha, theta, xi)); });
}

double riesz_apply_quadrature(const GridFunction& f, double alpha, double theta, double x) {
  check_admissible(alpha, theta);
  if (alpha == 2.0) throw DomainError("riesz_apply_quadrature: alpha must be < 2");
  f.check_decay();
  SpectralInterpolant F(f);
  double d[kTaylorOrder + 1];
  for (int m = 0; m <= kTaylorOrder; ++m) d[m] = F(x, m);
  const double f0 = d[0];
  const double K = std::tgamma(1.0 + alpha) / kPi;
  const double reach = f.grid.x_extent + std::abs(x);
  const double scale = f.sup_norm();
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-11;
  opt.max_intervals = 4000;
  auto integrate = [&](const auto& fn, const std::vector<double>& pts, const char* what) {
    auto r = quad::integrate_breakpoints(fn, pts, opt);
    if (!r.converged && r.error <= 1e-10 * std::max(std::abs(r.value), scale)) return r.value;
    return quad::value_or_throw(r, what);
  };
  // (0, δ] from the Taylor series of the difference, (δ, 1] by quadrature.
  constexpr double delta = 1.0 / 32.0;
  std::vector<double> near = {delta, 0.125, 0.25, 0.5, 1.0};
  std::vector<double> far;
  for (double z = 1.0; z < reach; z += 1.0) far.push_back(z);
  far.push_back(reach);
  auto power_integral = [alpha](int p) { return std::pow(delta, p - alpha) / (p - alpha); };
  double fact[kTaylorOrder + 1];
  fact[0] = 1.0;
  for (int m = 1; m <= kTaylorOrder; ++m) fact[m] = fact[m - 1] * m;

  if (theta == 0.0) {
    // Symmetric second difference.
    double total = 0.0;
    for (int p = 2; p <= kTaylorOrder; p += 2) total += 2.0 * d[p] / fact[p] * power_integral(p);
    auto g = [&](double z) { return (F(x + z) + F(x - z) - 2.0 * f0) * std::pow(z, -1.0 - alpha); };
    total += integrate(g, near, "riesz near");
    auto h = [&](double z) { return (F(x + z) + F(x - z)) * std::pow(z, -1.0 - alpha); };
    total += integrate(h, far, "riesz far") - 2.0 * f0 / alpha;
    return K * std::sin(0.5 * kPi * alpha) * total;
  }

  const bool compensate = alpha > 1.0;
  double total = 0.0;
  for (double side : {1.0, -1.0}) {
    const double weight = std::sin(0.5 * kPi * (alpha + side * theta));
    if (weight == 0.0) continue;
    double part = 0.0;
    for (int p = compensate ? 2 : 1; p <= kTaylorOrder; ++p)
      part += std::pow(side, p) * d[p] / fact[p] * power_integral(p);
    auto g = [&](double z) {
      const double diff = F(x + side * z) - f0 - (compensate ? side * z * d[1] : 0.0);
      return diff * std::pow(z, -1.0 - alpha);
    };
    part += integrate(g, near, "riesz near");
    auto h = [&](double z) { return F(x + side * z) * std::pow(z, -1.0 - alpha); };
    part += integrate(h, far, "riesz far");
    part -= f0 / alpha;
    if (compensate) part -= side * d[1] / (alpha - 1.0);
    total += weight * part;
  }
  return K * total;
}

GridFunction zero_pad(const GridFunction& f, std::size_t factor) {
  if (factor == 0 || (factor & (factor - 1)) != 0)
    throw DomainError("zero_pad: factor must be a power of two");
  SpectralGrid big(f.grid.n * factor, f.grid.x_extent * static_cast<double>(factor));
  GridFunction out{big, std::vector<cplx>(big.n)};
  const std::size_t offset = (big.n - f.grid.n) / 2;
  for (std::size_t j = 0; j < f.grid.n; ++j) out.values[offset + j] = f.values[j];
  return out;
}

double selfadjoint_check(const GridFunction& f, const GridFunction& g, double s, double t,
                         const SymbolEval& sym) {
  check_same_grid(f, g);
  const auto tf = propagate(f, s, t, sym);
  const auto tg = propagate(g, s, t, sym);
  double a = 0.0, b = 0.0;
  for (std::size_t j = 0; j < f.values.size(); ++j) {
    a += tf.values[j].real() * g.values[j].real();
    b += f.values[j].real() * tg.values[j].real();
  }
  const double dx = f.grid.dx();
  const double norm = f.l2_norm() * g.l2_norm();
  if (norm == 0.0) return 0.0;
  return std::abs(a - b) * dx / norm;
}

double commute_check(const GridFunction& f, double s, double t, const SymbolEval& sym) {
  const auto atf = apply_multiplier(propagate(f, s, t, sym), [&](double xi) {
    return xi == 0.0 ? cplx(0.0) : sym.eval(xi, t);
  });
  const auto taf = propagate(generator_apply(f, t, sym), s, t, sym, false);
  double diff = 0.0;
  for (std::size_t j = 0; j < atf.values.size(); ++j)
    diff = std::max(diff, std::abs(atf.values[j] - taf.values[j]));
  const double scale = atf.sup_norm();
  return scale == 0.0 ? diff : diff / scale;
}

std::vector<GridFunction> solve(const GridFunction& f, const SymbolEval& sym,
                                const std::vector<double>& horizons, double s0, bool adjoint) {
  std::vector<GridFunction> out;
  out.reserve(horizons.size());
  for (double t : horizons) {
    if (t < s0) throw DomainError("solve: horizons must not precede the start time");
    out.push_back(adjoint ? propagate_adjoint(f, s0, t, sym) : propagate(f, s0, t, sym));
  }
  return out;
}

}  // namespace geostable
