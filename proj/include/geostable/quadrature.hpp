#pragma once

// Adaptive Gauss–Kronrod (10/21 point) quadrature for real and complex
// integrands. Global subdivision: the interval with the largest error
// estimate is bisected until the total estimate meets the tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "geostable/errors.hpp"

namespace geostable::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK qk21 abscissae (descending, last is the centre) and weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// 10-point Gauss weights for kXgk[1], kXgk[3], ..., kXgk[9].
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = fc * kWgk[10];
  T gauss{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(centre - dx);
    const T f2 = f(centre + dx);
    kronrod += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  double err = magnitude(kronrod - gauss);
  // Round-off floor for nearly-exact panels.
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * magnitude(kronrod));
  return {a, b, kronrod, err};
}

}  // namespace detail

/// ∫_a^b f over a finite interval.
template <class F>
auto integrate(F f, double a, double b, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  Result<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel<T>> heap;
  auto first = detail::gk21<T>(f, a, b);
  T total = first.value;
  double total_err = first.error;
  heap.push(first);
  out.evaluations = 21;
  int intervals = 1;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (intervals >= opt.max_intervals) break;
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
    heap.pop();
    auto left = detail::gk21<T>(f, worst.a, mid);
    auto right = detail::gk21<T>(f, mid, worst.b);
    out.evaluations += 42;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = T{};
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
  return out;
}

/// ∫ f over [pts.front(), pts.back()], splitting at every interior point.
template <class F>
auto integrate_breakpoints(F f, std::span<const double> pts, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  Result<T> out;
  out.converged = true;
  if (pts.size() < 2) return out;
  const double span_len = pts.back() - pts.front();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    Options piece = opt;
    // Share the absolute budget in proportion to the piece length.
    if (span_len > 0) piece.abs_tol = opt.abs_tol * (pts[i + 1] - pts[i]) / span_len;
    auto r = integrate(f, pts[i], pts[i + 1], piece);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

/// ∫_a^∞ f via x = a + (1−u)/u, u ∈ (0,1].
template <class F>
auto integrate_to_infinity(F f, double a, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(0.0))>> {
  auto g = [&f, a](double u) {
    const double x = a + (1.0 - u) / u;
    return f(x) * (1.0 / (u * u));
  };
  return integrate(g, 0.0, 1.0, opt);
}

template <class T>
T value_or_throw(const Result<T>& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (error estimate " << r.error << ")";
    throw ConvergenceError(os.str());
  }
  return r.value;
}

}  // namespace geostable::quad
