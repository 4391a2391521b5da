#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "geostable/rng.hpp"
#include "geostable/symbols.hpp"

namespace geostable {

/// n_paths × grid.size() matrix, row-major; column 0 is the start value 0.
struct SamplePaths {
  std::vector<double> grid;
  std::size_t n_paths = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string scheme;
  double step = 0.0;

  std::size_t n_times() const { return grid.size(); }
  double& at(std::size_t p, std::size_t k) { return values[p * grid.size() + k]; }
  double at(std::size_t p, std::size_t k) const { return values[p * grid.size() + k]; }
  std::vector<double> column(std::size_t k) const;
  std::vector<double> terminal() const { return column(grid.size() - 1); }
};

/// {0, t/n, 2t/n, ..., t}.
std::vector<double> uniform_grid(double t, int n_steps);

/// Stable draws in Feller parametrization at a random or fixed time.
class StableGenerator {
 public:
  StableGenerator(double alpha, double theta);
  /// One draw of S_{α,θ}(time).
  double draw(Rng& rng, double time) const;
  /// Same with the time supplied as its logarithm (tiny Gamma clocks).
  double draw_log_time(Rng& rng, double log_time) const;
  /// Standardized S1 draw with unit time (σ already applied).
  double draw_unit(Rng& rng) const;

  double alpha() const { return alpha_; }

 private:
  double alpha_, theta_, sigma_, beta_;
  double b_shift_, s_scale_;
};

std::vector<double> stable_sample(double alpha, double theta, double t, std::size_t n,
                                  const RngStream& rng, int threads = 1);

SamplePaths gamma_inhom_sample(const Curve& b, const std::vector<double>& grid, std::size_t n,
                               const RngStream& rng, int threads = 1);

std::vector<double> gs_homog_sample(double alpha, double theta, double b, double t, std::size_t n,
                                    const RngStream& rng, int threads = 1);

SamplePaths gs1_sample(const ParamCurves& curves, const std::vector<double>& grid, std::size_t n,
                       const RngStream& rng, int threads = 1);

SamplePaths gs2_sample(const ParamCurves& curves, const std::vector<double>& grid, std::size_t n,
                       const RngStream& rng, int threads = 1);

SamplePaths multistable_sample(const ParamCurves& curves, const std::vector<double>& grid,
                               std::size_t n, const RngStream& rng, int threads = 1);

enum class VgMode { brownian_subordination, gamma_difference };

SamplePaths vg_inhom_sample(const Curve& b, const std::vector<double>& grid, std::size_t n,
                            const RngStream& rng, VgMode mode, int threads = 1);

/// Σ_k b(t_k)^{1/α} (G(t_{k+1}) − G(t_k)), G homogeneous GS with b = 1.
std::vector<double> rescaled_gs_limit(const Curve& b, double alpha, double theta, double t,
                                      int n_steps, std::size_t n, const RngStream& rng,
                                      int threads = 1);

// Terminal-value samplers on the uniform grid of step t/n_steps. They use the
// same frozen-coefficient scheme as the path samplers but merge consecutive
// steps whose frozen parameters coincide (exact in law), and never store paths.
std::vector<double> gs1_terminal(const ParamCurves& curves, double t, int n_steps, std::size_t n,
                                 const RngStream& rng, int threads = 1);
std::vector<double> gs2_terminal(const ParamCurves& curves, double t, int n_steps, std::size_t n,
                                 const RngStream& rng, int threads = 1);
std::vector<double> multistable_terminal(const ParamCurves& curves, double t, int n_steps,
                                         std::size_t n, const RngStream& rng, int threads = 1);
std::vector<double> gamma_inhom_terminal(const Curve& b, double t, int n_steps, std::size_t n,
                                         const RngStream& rng, int threads = 1);
std::vector<double> vg_inhom_terminal(const Curve& b, double t, int n_steps, std::size_t n,
                                      const RngStream& rng, VgMode mode, int threads = 1);

}  // namespace geostable
