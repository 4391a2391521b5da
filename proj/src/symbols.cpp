#include "geostable/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "geostable/errors.hpp"
#include "geostable/specfun.hpp"

namespace geostable {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kParamTol = 1e-12;

void check_knots(const std::vector<std::pair<double, double>>& knots, const char* what) {
  if (knots.empty()) throw DomainError(std::string(what) + ": needs at least one knot");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second))
      throw DomainError(std::string(what) + ": non-finite knot");
    if (i > 0 && !(knots[i].first > knots[i - 1].first))
      throw DomainError(std::string(what) + ": knot times must be strictly increasing");
  }
}

// log(1+w) without cancellation for small w.
cplx log1p_c(cplx w) {
  const double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
  return {re, std::arg(1.0 + w)};
}

cplx neg_log1p_checked(cplx w) {
  if (!(1.0 + w.real() > 0.0)) {
    std::ostringstream os;
    os << "symbol: 1 + b*psi = " << (1.0 + w) << " left the right half-plane";
    throw DomainError(os.str());
  }
  return -log1p_c(w);
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::max({fc, fd, f(a), f(b)});
}

}  // namespace

// ---------------------------------------------------------------- Curve

Curve Curve::constant(double v) {
  if (!std::isfinite(v)) throw DomainError("Curve: non-finite constant");
  Curve c;
  c.kind_ = Kind::constant;
  c.knots_ = {{0.0, v}};
  c.fn_ = nullptr;
  return c;
}

Curve Curve::piecewise_constant(std::vector<std::pair<double, double>> knots) {
  check_knots(knots, "piecewise_constant curve");
  Curve c;
  c.kind_ = knots.size() == 1 ? Kind::constant : Kind::piecewise_constant;
  c.knots_ = std::move(knots);
  return c;
}

Curve Curve::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  check_knots(knots, "piecewise_linear curve");
  Curve c;
  c.kind_ = knots.size() == 1 ? Kind::constant : Kind::piecewise_linear;
  c.knots_ = std::move(knots);
  return c;
}

Curve Curve::function(std::function<double(double)> f, std::vector<double> breakpoints) {
  if (!f) throw DomainError("function curve: empty callable");
  std::sort(breakpoints.begin(), breakpoints.end());
  Curve c;
  c.kind_ = Kind::function;
  c.knots_.clear();
  c.fn_ = std::move(f);
  c.fn_breaks_ = std::move(breakpoints);
  return c;
}

double Curve::operator()(double t) const {
  switch (kind_) {
    case Kind::constant:
      return knots_.front().second;
    case Kind::piecewise_constant: {
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double v, const auto& k) { return v < k.first; });
      if (it == knots_.begin()) return knots_.front().second;
      return std::prev(it)->second;
    }
    case Kind::piecewise_linear: {
      if (t <= knots_.front().first) return knots_.front().second;
      if (t >= knots_.back().first) return knots_.back().second;
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double v, const auto& k) { return v < k.first; });
      const auto& hi = *it;
      const auto& lo = *std::prev(it);
      const double w = (t - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
    case Kind::function:
      return fn_(t);
  }
  return 0.0;
}

std::vector<double> Curve::breakpoints() const {
  std::vector<double> out;
  switch (kind_) {
    case Kind::constant:
      break;
    case Kind::piecewise_constant:
    case Kind::piecewise_linear:
      for (const auto& k : knots_) out.push_back(k.first);
      break;
    case Kind::function:
      out = fn_breaks_;
      break;
  }
  return out;
}

double Curve::max_on(double a, double b) const {
  if (b < a) std::swap(a, b);
  auto& self = *this;
  switch (kind_) {
    case Kind::constant:
      return knots_.front().second;
    case Kind::piecewise_constant:
    case Kind::piecewise_linear: {
      double m = std::max(self(a), self(b));
      for (const auto& k : knots_)
        if (k.first > a && k.first <= b) m = std::max(m, self(k.first));
      return m;
    }
    case Kind::function: {
      std::vector<double> pts = {a, b};
      for (double br : fn_breaks_)
        if (br > a && br < b) pts.push_back(br);
      std::sort(pts.begin(), pts.end());
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
        const int n = 256;
        const double lo = pts[p], hi = pts[p + 1];
        int arg = 0;
        double val = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
          const double v = fn_(lo + (hi - lo) * i / n);
          if (v > val) {
            val = v;
            arg = i;
          }
        }
        const double l = lo + (hi - lo) * std::max(arg - 1, 0) / n;
        const double r = lo + (hi - lo) * std::min(arg + 1, n) / n;
        best = std::max({best, val, golden_max(fn_, l, r)});
      }
      return best;
    }
  }
  return 0.0;
}

double Curve::min_on(double a, double b) const {
  Curve neg = Curve::function([this](double t) { return -(*this)(t); }, breakpoints());
  if (kind_ != Kind::function) {
    if (b < a) std::swap(a, b);
    double m = std::min((*this)(a), (*this)(b));
    for (const auto& k : knots_)
      if (k.first > a && k.first <= b) m = std::min(m, (*this)(k.first));
    return m;
  }
  return -neg.max_on(a, b);
}

std::string Curve::describe() const {
  std::ostringstream os;
  os.precision(17);
  auto list = [&] {
    os << "[";
    for (std::size_t i = 0; i < knots_.size(); ++i)
      os << (i ? "," : "") << "(" << knots_[i].first << "," << knots_[i].second << ")";
    os << "]";
  };
  switch (kind_) {
    case Kind::constant:
      os << knots_.front().second;
      break;
    case Kind::piecewise_constant:
      os << "constant ";
      list();
      break;
    case Kind::piecewise_linear:
      os << "linear ";
      list();
      break;
    case Kind::function:
      os << "function";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- ParamCurves

void check_admissible(double alpha, double theta) {
  if (!std::isfinite(alpha) || !std::isfinite(theta))
    throw DomainError("stable parameters must be finite");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "alpha must lie in (0,2], got " << alpha;
    throw DomainError(os.str());
  }
  if (alpha == 1.0) throw DomainError("alpha = 1 is excluded");
  const double bound = std::min(alpha, 2.0 - alpha);
  if (std::abs(theta) > bound + kParamTol) {
    std::ostringstream os;
    os << "|theta| <= min(alpha, 2-alpha) violated: alpha=" << alpha << ", theta=" << theta;
    throw DomainError(os.str());
  }
}

namespace {

double max_increment(const Curve& c, double t_max, int n) {
  double m = 0.0;
  double prev = c(0.0);
  for (int i = 1; i <= n; ++i) {
    const double v = c(t_max * i / n);
    m = std::max(m, std::abs(v - prev));
    prev = v;
  }
  return m;
}

void check_function_continuity(const Curve& c, double t_max, const char* name) {
  if (c.kind() != Curve::Kind::function) return;
  const double coarse = max_increment(c, t_max, 2000);
  const double fine = max_increment(c, t_max, 4000);
  if (fine > 1e-6 && fine > 0.75 * coarse) {
    std::ostringstream os;
    os << name << "(t) fails the continuity check (max increment " << fine
       << " does not shrink under refinement)";
    throw DomainError(os.str());
  }
}

}  // namespace

void ParamCurves::validate(int samples) const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be positive and finite");
  if (samples < 2) throw DomainError("validate: need at least 2 samples");
  if (mgf_bound) {
    if (!(*mgf_bound > 0.0 && *mgf_bound < 1.0)) {
      std::ostringstream os;
      os << "finite-MGF bound K must satisfy 0 < K < 1, got " << *mgf_bound;
      throw DomainError(os.str());
    }
  }
  std::vector<double> ts;
  ts.reserve(samples + 64);
  for (int i = 0; i < samples; ++i) ts.push_back(t_max * i / (samples - 1));
  for (const Curve* c : {&alpha, &theta, &b}) {
    for (double k : c->breakpoints()) {
      if (k >= 0.0 && k <= t_max) ts.push_back(k);
      const double before = k - 1e-9 * std::max(1.0, std::abs(k));
      if (before >= 0.0 && before <= t_max) ts.push_back(before);
    }
  }
  std::sort(ts.begin(), ts.end());
  double prev_alpha = alpha(ts.front());
  for (double t : ts) {
    const double a = alpha(t);
    const double th = theta(t);
    const double bv = b(t);
    if ((a - 1.0) * (prev_alpha - 1.0) < 0.0) {
      std::ostringstream os;
      os << "alpha(t) crosses the excluded value 1 near t=" << t;
      throw DomainError(os.str());
    }
    prev_alpha = a;
    try {
      check_admissible(a, th);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << e.what() << " (at t=" << t << ")";
      throw DomainError(os.str());
    }
    if (!(bv > 0.0) || !std::isfinite(bv)) {
      std::ostringstream os;
      os << "b(t) must be positive, got " << bv << " at t=" << t;
      throw DomainError(os.str());
    }
    if (mgf_bound && !(bv < *mgf_bound)) {
      std::ostringstream os;
      os << "b(t) < K violated: b=" << bv << ", K=" << *mgf_bound << " at t=" << t;
      throw DomainError(os.str());
    }
  }
  check_function_continuity(alpha, t_max, "alpha");
  check_function_continuity(theta, t_max, "theta");
  check_function_continuity(b, t_max, "b");
}

std::vector<double> ParamCurves::breakpoints(double s, double t) const {
  std::vector<double> out = {s};
  for (const Curve* c : {&alpha, &theta, &b})
    for (double k : c->breakpoints())
      if (k > s && k < t) out.push_back(k);
  out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- symbols

cplx psi(double alpha, double theta, double xi) {
  check_admissible(alpha, theta);
  if (xi == 0.0) return {0.0, 0.0};
  const double mag = std::pow(std::abs(xi), alpha);
  const double sgn = xi > 0 ? 1.0 : -1.0;
  return {mag * cos_pi(0.5 * theta), sgn * mag * sin_pi(0.5 * theta)};
}

PolarParams feller_to_polar(double alpha, double theta) {
  check_admissible(alpha, theta);
  if (alpha == 2.0) return {1.0, 0.0};
  const double sigma = std::pow(cos_pi(0.5 * theta), 1.0 / alpha);
  double beta = -std::tan(0.5 * kPi * theta) / std::tan(0.5 * kPi * alpha);
  beta = std::clamp(beta, -1.0, 1.0);
  return {sigma, beta};
}

const char* to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::stable:
      return "stable";
    case SymbolKind::multistable:
      return "multistable";
    case SymbolKind::gs1:
      return "gs1";
    case SymbolKind::gs2:
      return "gs2";
    case SymbolKind::gamma_inhom:
      return "gamma_inhom";
    case SymbolKind::vg_inhom:
      return "vg_inhom";
    case SymbolKind::custom:
      return "custom";
  }
  return "custom";
}

namespace {

bool effectively_constant(const Curve& c, double t_max) {
  return c.is_constant() || c.max_on(0.0, t_max) == c.min_on(0.0, t_max);
}

}  // namespace

cplx eta_gs1(const ParamCurves& curves, double xi, double t) {
  const double bv = curves.b(t);
  if (!(bv > 0.0)) throw DomainError("eta_gs1: b must be positive");
  return neg_log1p_checked(bv * psi(curves.alpha(t), curves.theta(t), xi));
}

cplx eta_gs2(const ParamCurves& curves, double xi, double t) {
  const double bv = curves.b(t);
  if (!(bv > 0.0)) throw DomainError("eta_gs2: b(t) must be positive");
  return neg_log1p_checked(bv * psi(curves.alpha(t), curves.theta(t), xi));
}

SymbolEval make_stable_symbol(double alpha, double theta) {
  check_admissible(alpha, theta);
  SymbolEval s;
  s.kind = SymbolKind::stable;
  s.eval = [alpha, theta](double xi, double) { return -psi(alpha, theta, xi); };
  return s;
}

SymbolEval make_multistable_symbol(const ParamCurves& curves) {
  curves.validate();
  SymbolEval s;
  s.kind = SymbolKind::multistable;
  s.eval = [c = curves](double xi, double t) { return -psi(c.alpha(t), c.theta(t), xi); };
  s.breakpoints = curves.breakpoints(0.0, curves.t_max);
  return s;
}

SymbolEval make_gs1_symbol(const ParamCurves& curves) {
  curves.validate();
  if (!effectively_constant(curves.b, curves.t_max))
    throw DomainError("gs1 symbol: b must be constant");
  SymbolEval s;
  s.kind = SymbolKind::gs1;
  s.eval = [c = curves](double xi, double t) { return eta_gs1(c, xi, t); };
  s.breakpoints = curves.breakpoints(0.0, curves.t_max);
  return s;
}

SymbolEval make_gs2_symbol(const ParamCurves& curves) {
  curves.validate();
  if (!effectively_constant(curves.alpha, curves.t_max) ||
      !effectively_constant(curves.theta, curves.t_max))
    throw DomainError("gs2 symbol: alpha and theta must be constant");
  SymbolEval s;
  s.kind = SymbolKind::gs2;
  s.eval = [c = curves](double xi, double t) { return eta_gs2(c, xi, t); };
  s.breakpoints = curves.breakpoints(0.0, curves.t_max);
  return s;
}

SymbolEval make_gamma_inhom_symbol(const Curve& b) {
  SymbolEval s;
  s.kind = SymbolKind::gamma_inhom;
  s.eval = [b](double xi, double t) {
    const double bv = b(t);
    if (!(bv > 0.0)) throw DomainError("gamma_inhom symbol: b(t) must be positive");
    return -log1p_c(cplx(0.0, -bv * xi));
  };
  s.breakpoints = b.breakpoints();
  return s;
}

SymbolEval make_vg_inhom_symbol(const Curve& b) {
  SymbolEval s;
  s.kind = SymbolKind::vg_inhom;
  s.eval = [b](double xi, double t) {
    const double bv = b(t);
    if (!(bv > 0.0)) throw DomainError("vg_inhom symbol: b(t) must be positive");
    return cplx(-std::log1p(bv * xi * xi), 0.0);
  };
  s.breakpoints = b.breakpoints();
  return s;
}

SymbolEval make_custom_symbol(std::function<cplx(double, double)> eval,
                              std::vector<double> breakpoints) {
  SymbolEval s;
  s.kind = SymbolKind::custom;
  s.eval = std::move(eval);
  s.breakpoints = std::move(breakpoints);
  return s;
}

SymbolEval make_heat_symbol(double c) {
  return make_custom_symbol([c](double xi, double) { return cplx(-c * xi * xi, 0.0); });
}

// ---------------------------------------------------------------- integrals

cplx accumulated_exponent(const SymbolEval& sym, double s, double t, double xi) {
  if (!(s <= t)) throw DomainError("accumulated_exponent: need s <= t");
  if (s < 0.0) throw DomainError("accumulated_exponent: need s >= 0");
  if (s == t || xi == 0.0) return {0.0, 0.0};
  std::vector<double> pts = {s};
  for (double k : sym.breakpoints)
    if (k > s && k < t) pts.push_back(k);
  pts.push_back(t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-13;
  auto f = [&](double tau) { return sym.eval(xi, tau); };
  auto r = quad::integrate_breakpoints(f, pts, opt);
  return quad::value_or_throw(r, "accumulated_exponent");
}

cplx joint_cf(const SymbolEval& sym, const std::vector<double>& times,
              const std::vector<double>& xis) {
  if (times.size() != xis.size()) throw DomainError("joint_cf: times and xis differ in length");
  if (times.empty()) return {1.0, 0.0};
  if (times.front() < 0.0) throw DomainError("joint_cf: times must be nonnegative");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw DomainError("joint_cf: times must be strictly increasing");
  // On (t_{k-1}, t_k] the process increment is paired with Σ_{j≥k} ξ_j.
  std::vector<double> suffix(xis.size());
  double acc = 0.0;
  for (std::size_t k = xis.size(); k-- > 0;) {
    acc += xis[k];
    suffix[k] = acc;
  }
  cplx total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    total += accumulated_exponent(sym, prev, times[k], suffix[k]);
    prev = times[k];
  }
  return std::exp(total);
}

cplx log_symbol_resolvent(double b, cplx psi_val) {
  if (!(b > 0.0)) throw DomainError("log_symbol_resolvent: b must be positive");
  if (psi_val.real() < 0.0) throw DomainError("log_symbol_resolvent: Re psi must be >= 0");
  if (psi_val == cplx(0.0, 0.0)) throw DomainError("log_symbol_resolvent: psi must be nonzero");
  // τ = e^u / b: ∫_0^∞ −bψ/(e^u + bψ) du
  const cplx c = b * psi_val;
  auto f = [c](double u) { return -c / (std::exp(u) + c); };
  const double knee = std::log1p(std::abs(c));
  const double u_max = knee + 50.0;
  std::vector<double> pts = {0.0, knee, u_max};
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-13;
  auto r = quad::integrate_breakpoints(f, pts, opt);
  cplx v = quad::value_or_throw(r, "log_symbol_resolvent");
  // Closed-form tail beyond u_max: −ln(1 + c e^{−u_max}).
  v += -log1p_c(c * std::exp(-u_max));
  return v;
}

LogSeriesResult log_symbol_series(double b, cplx psi_val, int n_terms) {
  if (n_terms < 1) throw DomainError("log_symbol_series: need N >= 1");
  const cplx c = b * psi_val;
  cplx sum = 0.0;
  cplx power = 1.0;
  for (int n = 1; n <= n_terms; ++n) {
    power *= -c;
    sum += power / static_cast<double>(n);
  }
  return {sum, std::abs(c) >= 1.0};
}

}  // namespace geostable
