#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "geostable/config.hpp"

namespace geostable {

/// Column-oriented table; every column has the same length.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  /// Optional text columns appended after the numeric ones.
  std::vector<std::string> text_names;
  std::vector<std::vector<std::string>> text_columns;

  std::size_t rows() const;
};

/// Numbers are written with 17 significant digits so the file round-trips.
void write_csv(const std::string& path, const Table& table);

/// Row-major float64 matrix, little-endian, no header (shape goes in the sidecar).
void write_binary(const std::string& path, const std::vector<double>& values);

/// Two-column (x, value) CSV with an optional header line.
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

/// Sidecar with config, its FNV-1a hash, seed and any extra fields.
nlohmann::json make_sidecar(const RunConfig& cfg, const std::string& command);

/// Writes `<path>.json` next to an artifact.
void write_sidecar(const std::string& artifact_path, const nlohmann::json& sidecar);

std::string hex64(std::uint64_t v);

/// out_dir/name, creating out_dir if needed.
std::string artifact_path(const RunConfig& cfg, const std::string& name);

}  // namespace geostable
