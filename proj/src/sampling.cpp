#include "geostable/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "geostable/errors.hpp"

namespace geostable {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw DomainError("time grid needs at least two points");
  if (grid.front() != 0.0) throw DomainError("time grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("time grid must be strictly increasing (nonpositive step)");
}

double max_step(const std::vector<double>& grid) {
  double h = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) h = std::max(h, grid[i] - grid[i - 1]);
  return h;
}

void check_count(std::size_t n) {
  if (n == 0) throw DomainError("sample count must be positive");
}

// Builds paths from a per-step increment generator inc(rng, t0, t1).
template <class Inc>
SamplePaths simulate(const std::vector<double>& grid, std::size_t n, const RngStream& stream,
                     int threads, const char* scheme, const Inc& inc) {
  check_grid(grid);
  check_count(n);
  SamplePaths out;
  out.grid = grid;
  out.n_paths = n;
  out.values.assign(n * grid.size(), 0.0);
  out.seed = stream.seed;
  out.stream_id = stream.stream_id;
  out.scheme = scheme;
  out.step = max_step(grid);
  const std::size_t m = grid.size();
  for_each_chunk(n, stream, threads, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      double x = 0.0;
      double* row = out.values.data() + p * m;
      row[0] = 0.0;
      for (std::size_t k = 1; k < m; ++k) {
        x += inc(rng, grid[k - 1], grid[k]);
        row[k] = x;
      }
    }
  });
  return out;
}

template <class Draw>
std::vector<double> draw_vector(std::size_t n, const RngStream& stream, int threads,
                                const Draw& draw) {
  check_count(n);
  std::vector<double> out(n);
  for_each_chunk(n, stream, threads, [&](Rng& rng, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = draw(rng);
  });
  return out;
}

struct Segment {
  double alpha, theta, b, duration;
};

// Frozen-coefficient steps on the uniform grid, merged while parameters repeat.
std::vector<Segment> frozen_segments(const ParamCurves& c, double t, int n_steps) {
  if (!(t > 0.0)) throw DomainError("horizon must be positive");
  if (n_steps < 1) throw DomainError("n_steps must be >= 1");
  std::vector<Segment> segs;
  for (int k = 0; k < n_steps; ++k) {
    const double t0 = t * k / n_steps;
    const double t1 = t * (k + 1) / n_steps;
    Segment s{c.alpha(t0), c.theta(t0), c.b(t0), t1 - t0};
    if (!segs.empty() && segs.back().alpha == s.alpha && segs.back().theta == s.theta &&
        segs.back().b == s.b) {
      segs.back().duration += s.duration;
    } else {
      segs.push_back(s);
    }
  }
  return segs;
}

}  // namespace

std::vector<double> SamplePaths::column(std::size_t k) const {
  if (k >= grid.size()) throw DomainError("SamplePaths::column: index out of range");
  std::vector<double> c(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) c[p] = at(p, k);
  return c;
}

std::vector<double> uniform_grid(double t, int n_steps) {
  if (!(t > 0.0)) throw DomainError("uniform_grid: horizon must be positive");
  if (n_steps < 1) throw DomainError("uniform_grid: n_steps must be >= 1");
  std::vector<double> g(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) g[k] = t * k / n_steps;
  g.back() = t;
  return g;
}

// ---------------------------------------------------------------- stable

StableGenerator::StableGenerator(double alpha, double theta) : alpha_(alpha), theta_(theta) {
  const PolarParams pp = feller_to_polar(alpha, theta);
  sigma_ = pp.sigma;
  beta_ = pp.beta;
  if (alpha == 2.0) {
    b_shift_ = 0.0;
    s_scale_ = 1.0;
    return;
  }
  const double tp = std::tan(0.5 * kPi * alpha);
  b_shift_ = std::atan(beta_ * tp) / alpha;
  s_scale_ = std::pow(1.0 + beta_ * beta_ * tp * tp, 0.5 / alpha);
}

double StableGenerator::draw_unit(Rng& rng) const {
  if (alpha_ == 2.0) return std::sqrt(2.0) * rng.normal();
  // Chambers–Mallows–Stuck, S1 parametrization.
  const double v = kPi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double avb = alpha_ * (v + b_shift_);
  const double x = s_scale_ * std::sin(avb) / std::pow(std::cos(v), 1.0 / alpha_) *
                   std::pow(std::cos(v - avb) / w, (1.0 - alpha_) / alpha_);
  return sigma_ * x;
}

double StableGenerator::draw(Rng& rng, double time) const {
  if (time <= 0.0) {
    draw_unit(rng);
    return 0.0;
  }
  return std::pow(time, 1.0 / alpha_) * draw_unit(rng);
}

double StableGenerator::draw_log_time(Rng& rng, double log_time) const {
  return std::exp(log_time / alpha_) * draw_unit(rng);
}

std::vector<double> stable_sample(double alpha, double theta, double t, std::size_t n,
                                  const RngStream& rng, int threads) {
  if (!(t > 0.0)) throw DomainError("stable_sample: t must be positive");
  StableGenerator gen(alpha, theta);
  const double scale = std::pow(t, 1.0 / alpha);
  return draw_vector(n, rng, threads, [&](Rng& r) { return scale * gen.draw_unit(r); });
}

// ---------------------------------------------------------------- Gamma / GS

SamplePaths gamma_inhom_sample(const Curve& b, const std::vector<double>& grid, std::size_t n,
                               const RngStream& rng, int threads) {
  return simulate(grid, n, rng, threads, "frozen_gamma", [&](Rng& r, double t0, double t1) {
    const double bv = b(t0);
    if (!(bv > 0.0)) throw DomainError("gamma_inhom_sample: b(t) must be positive");
    return bv * std::exp(r.log_gamma_variate(t1 - t0));
  });
}

std::vector<double> gs_homog_sample(double alpha, double theta, double b, double t, std::size_t n,
                                    const RngStream& rng, int threads) {
  if (!(b > 0.0)) throw DomainError("gs_homog_sample: b must be positive");
  if (!(t > 0.0)) throw DomainError("gs_homog_sample: t must be positive");
  StableGenerator gen(alpha, theta);
  const double lb = std::log(b);
  return draw_vector(n, rng, threads, [&](Rng& r) {
    return gen.draw_log_time(r, lb + r.log_gamma_variate(t));
  });
}

SamplePaths gs1_sample(const ParamCurves& curves, const std::vector<double>& grid, std::size_t n,
                       const RngStream& rng, int threads) {
  curves.validate();
  const double bv = curves.b(0.0);
  const double lb = std::log(bv);
  return simulate(grid, n, rng, threads, "frozen_gs1", [&](Rng& r, double t0, double t1) {
    StableGenerator gen(curves.alpha(t0), curves.theta(t0));
    return gen.draw_log_time(r, lb + r.log_gamma_variate(t1 - t0));
  });
}

SamplePaths gs2_sample(const ParamCurves& curves, const std::vector<double>& grid, std::size_t n,
                       const RngStream& rng, int threads) {
  curves.validate();
  StableGenerator gen(curves.alpha(0.0), curves.theta(0.0));
  // Stable increments driven by the Γ¹ increments of each step.
  return simulate(grid, n, rng, threads, "frozen_gs2", [&](Rng& r, double t0, double t1) {
    return gen.draw_log_time(r, std::log(curves.b(t0)) + r.log_gamma_variate(t1 - t0));
  });
}

SamplePaths multistable_sample(const ParamCurves& curves, const std::vector<double>& grid,
                               std::size_t n, const RngStream& rng, int threads) {
  curves.validate();
  return simulate(grid, n, rng, threads, "frozen_stable", [&](Rng& r, double t0, double t1) {
    StableGenerator gen(curves.alpha(t0), curves.theta(t0));
    return gen.draw(r, t1 - t0);
  });
}

SamplePaths vg_inhom_sample(const Curve& b, const std::vector<double>& grid, std::size_t n,
                            const RngStream& rng, VgMode mode, int threads) {
  if (mode == VgMode::brownian_subordination) {
    return simulate(grid, n, rng, threads, "vg_brownian", [&](Rng& r, double t0, double t1) {
      const double lg = std::log(b(t0)) + r.log_gamma_variate(t1 - t0);
      return std::exp(0.5 * lg) * std::sqrt(2.0) * r.normal();
    });
  }
  return simulate(grid, n, rng, threads, "vg_gamma_difference", [&](Rng& r, double t0, double t1) {
    const double c = std::sqrt(b(t0));
    const double g1 = std::exp(r.log_gamma_variate(t1 - t0));
    const double g2 = std::exp(r.log_gamma_variate(t1 - t0));
    return c * (g1 - g2);
  });
}

std::vector<double> rescaled_gs_limit(const Curve& b, double alpha, double theta, double t,
                                      int n_steps, std::size_t n, const RngStream& rng,
                                      int threads) {
  if (!(t > 0.0)) throw DomainError("rescaled_gs_limit: t must be positive");
  if (n_steps < 1) throw DomainError("rescaled_gs_limit: n_steps must be >= 1");
  StableGenerator gen(alpha, theta);
  std::vector<double> scale(n_steps), dur(n_steps);
  for (int k = 0; k < n_steps; ++k) {
    const double t0 = t * k / n_steps;
    const double bv = b(t0);
    if (!(bv > 0.0)) throw DomainError("rescaled_gs_limit: b(t) must be positive");
    scale[k] = std::pow(bv, 1.0 / alpha);
    dur[k] = t * (k + 1) / n_steps - t0;
  }
  return draw_vector(n, rng, threads, [&](Rng& r) {
    double x = 0.0;
    for (int k = 0; k < n_steps; ++k)
      x += scale[k] * gen.draw_log_time(r, r.log_gamma_variate(dur[k]));
    return x;
  });
}

// ---------------------------------------------------------------- terminal

std::vector<double> gs1_terminal(const ParamCurves& curves, double t, int n_steps, std::size_t n,
                                 const RngStream& rng, int threads) {
  curves.validate();
  const auto segs = frozen_segments(curves, t, n_steps);
  std::vector<StableGenerator> gens;
  for (const auto& s : segs) gens.emplace_back(s.alpha, s.theta);
  const double lb = std::log(curves.b(0.0));
  return draw_vector(n, rng, threads, [&](Rng& r) {
    double x = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i)
      x += gens[i].draw_log_time(r, lb + r.log_gamma_variate(segs[i].duration));
    return x;
  });
}

std::vector<double> gamma_inhom_terminal(const Curve& b, double t, int n_steps, std::size_t n,
                                         const RngStream& rng, int threads) {
  ParamCurves c{Curve::constant(0.5), Curve::constant(0.0), b, t, std::nullopt};
  const auto segs = frozen_segments(c, t, n_steps);
  for (const auto& s : segs)
    if (!(s.b > 0.0)) throw DomainError("gamma_inhom_terminal: b(t) must be positive");
  return draw_vector(n, rng, threads, [&](Rng& r) {
    double x = 0.0;
    for (const auto& s : segs) x += s.b * std::exp(r.log_gamma_variate(s.duration));
    return x;
  });
}

std::vector<double> gs2_terminal(const ParamCurves& curves, double t, int n_steps, std::size_t n,
                                 const RngStream& rng, int threads) {
  curves.validate();
  const auto segs = frozen_segments(curves, t, n_steps);
  StableGenerator gen(curves.alpha(0.0), curves.theta(0.0));
  // Constant (α,θ): the stable increments over the Γ¹ increments add up to
  // one stable draw at the total subordinator time.
  return draw_vector(n, rng, threads, [&](Rng& r) {
    double clock = 0.0;
    for (const auto& s : segs) clock += s.b * std::exp(r.log_gamma_variate(s.duration));
    return gen.draw(r, clock);
  });
}

std::vector<double> multistable_terminal(const ParamCurves& curves, double t, int n_steps,
                                         std::size_t n, const RngStream& rng, int threads) {
  curves.validate();
  const auto segs = frozen_segments(curves, t, n_steps);
  std::vector<StableGenerator> gens;
  for (const auto& s : segs) gens.emplace_back(s.alpha, s.theta);
  return draw_vector(n, rng, threads, [&](Rng& r) {
    double x = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) x += gens[i].draw(r, segs[i].duration);
    return x;
  });
}

std::vector<double> vg_inhom_terminal(const Curve& b, double t, int n_steps, std::size_t n,
                                      const RngStream& rng, VgMode mode, int threads) {
  ParamCurves c{Curve::constant(0.5), Curve::constant(0.0), b, t, std::nullopt};
  const auto segs = frozen_segments(c, t, n_steps);
  if (mode == VgMode::brownian_subordination) {
    return draw_vector(n, rng, threads, [&](Rng& r) {
      double clock = 0.0;
      for (const auto& s : segs) clock += s.b * std::exp(r.log_gamma_variate(s.duration));
      return std::sqrt(2.0 * clock) * r.normal();
    });
  }
  return draw_vector(n, rng, threads, [&](Rng& r) {
    double x = 0.0;
    for (const auto& s : segs) {
      const double c2 = std::sqrt(s.b);
      x += c2 * (std::exp(r.log_gamma_variate(s.duration)) -
                 std::exp(r.log_gamma_variate(s.duration)));
    }
    return x;
  });
}

}  // namespace geostable
