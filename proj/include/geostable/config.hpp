#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geostable/sampling.hpp"
#include "geostable/symbols.hpp"

namespace geostable {

enum class ProcessKind { stable, gamma_inhom, gs_homog, gs1, gs2, multistable, vg_inhom };

const char* to_string(ProcessKind k);
ProcessKind parse_process(const std::string& s);

enum class OutputFormat { csv, binary };

/// Flat `key = value` run description.
///
/// Curves accept a scalar, `constant [(t0,v0),(t1,v1),...]` (right-continuous
/// steps) or `linear [(t0,v0),...]`. Lists are `[a, b, c]`. `#` starts a comment.
struct RunConfig {
  ProcessKind process = ProcessKind::gs2;
  Curve alpha = Curve::constant(1.5);
  Curve theta = Curve::constant(0.0);
  Curve b = Curve::constant(1.0);
  std::optional<double> mgf_bound;

  double t = 1.0;
  int n_steps = 100;
  std::size_t n_paths = 10000;
  std::uint64_t seed = 20240611;
  int threads = 1;
  VgMode vg_mode = VgMode::brownian_subordination;

  // spectral grid (density, solve)
  std::size_t grid_n = 4096;
  double grid_extent = 40.0;
  bool allow_window = false;

  // levy
  std::vector<double> x_values;
  double x_min = 0.1, x_max = 10.0;
  int x_count = 50;
  double levy_time = 0.0;

  // tails
  double q_lo = 0.99, q_hi = 0.9999;
  int tail_levels = 20;

  // solve
  std::string initial = "gaussian";  // gaussian | bump | path to a CSV of (x, value)
  double initial_centre = 0.0;
  double initial_width = 1.0;
  double t_start = 0.0;
  std::vector<double> horizons = {0.5, 1.0};
  bool adjoint = true;

  // tolerances
  double rel_tol = 1e-16;
  int k_max = 400;

  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;

  /// Keys as read (after overrides), for the sidecar and the config hash.
  std::map<std::string, std::string> raw;

  ParamCurves curves() const;
  SymbolEval symbol() const;
  /// Parameter checks for the selected process; throws ConfigError.
  void validate() const;
  /// Canonical `key = value` text, sorted by key.
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;
};

/// Parses a curve literal.
Curve parse_curve(const std::string& text);
/// Parses `[a, b, ...]` or a single number.
std::vector<double> parse_list(const std::string& text);

/// Reads `key = value` text. Unknown keys and malformed values raise ConfigError.
RunConfig parse_config(const std::string& text);
/// A `.json` path is read as an artifact sidecar (its "config" object).
RunConfig load_config(const std::string& path);
/// Applies one `key = value` pair on top of an existing configuration.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace geostable
