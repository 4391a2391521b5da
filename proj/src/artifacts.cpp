#include "geostable/artifacts.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "geostable/errors.hpp"

namespace geostable {

std::size_t Table::rows() const {
  if (!columns.empty()) return columns.front().size();
  if (!text_columns.empty()) return text_columns.front().size();
  return 0;
}

void write_csv(const std::string& path, const Table& table) {
  const std::size_t n = table.rows();
  if (table.names.size() != table.columns.size() || table.text_names.size() != table.text_columns.size())
    throw std::invalid_argument("write_csv: names and columns differ in count");
  for (const auto& c : table.columns)
    if (c.size() != n) throw std::invalid_argument("write_csv: ragged columns");
  for (const auto& c : table.text_columns)
    if (c.size() != n) throw std::invalid_argument("write_csv: ragged columns");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << std::setprecision(17);
  bool first = true;
  for (const auto& name : table.names) {
    out << (first ? "" : ",") << name;
    first = false;
  }
  for (const auto& name : table.text_names) {
    out << (first ? "" : ",") << name;
    first = false;
  }
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    first = true;
    for (const auto& c : table.columns) {
      out << (first ? "" : ",") << c[i];
      first = false;
    }
    for (const auto& c : table.text_columns) {
      out << (first ? "" : ",") << c[i];
      first = false;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_binary(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
  } else {
    for (double v : values) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (std::size_t i = sizeof(double); i-- > 0;) out.put(static_cast<char>(bytes[i]));
    }
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open initial-condition file '" + path + "'");
  std::vector<std::pair<double, double>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, v;
    if (!(ss >> x >> v)) {
      if (lineno == 1) continue;  // header
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    out.emplace_back(x, v);
  }
  if (out.empty()) throw ConfigError(path + ": no data rows");
  return out;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

nlohmann::json make_sidecar(const RunConfig& cfg, const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  j["process"] = to_string(cfg.process);
  j["config"] = nlohmann::json::object();
  for (const auto& [k, v] : cfg.raw) j["config"][k] = v;
  j["config_hash"] = hex64(cfg.hash());
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["tolerances"] = {{"rel_tol", cfg.rel_tol}, {"k_max", cfg.k_max}};
  return j;
}

void write_sidecar(const std::string& artifact_path, const nlohmann::json& sidecar) {
  const std::string path = artifact_path + ".json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << sidecar.dump(2) << "\n";
}

std::string artifact_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

}  // namespace geostable
