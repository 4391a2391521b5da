#include "geostable/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "geostable/errors.hpp"
#include "geostable/transform.hpp"

namespace geostable {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError(what + ": expected a number, got '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    // Allow 1e6-style integers.
    const double d = parse_number(s, what);
    if (d != std::floor(d)) throw ConfigError(what + ": expected an integer, got '" + text + "'");
    return static_cast<long long>(d);
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string s = lower(trim(text));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(what + ": expected true or false, got '" + text + "'");
}

// "[(t0,v0),(t1,v1)]"
std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ConfigError("curve knots must be written [(t0,v0),(t1,v1),...]");
  s = s.substr(1, s.size() - 2);
  std::vector<std::pair<double, double>> out;
  std::size_t pos = 0;
  while (true) {
    const auto open = s.find('(', pos);
    if (open == std::string::npos) break;
    const auto close = s.find(')', open);
    if (close == std::string::npos) throw ConfigError("curve knots: unbalanced parenthesis");
    const std::string inner = s.substr(open + 1, close - open - 1);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw ConfigError("curve knots: expected (t,v), got (" + inner + ")");
    out.emplace_back(parse_number(inner.substr(0, comma), "knot time"),
                     parse_number(inner.substr(comma + 1), "knot value"));
    pos = close + 1;
  }
  if (out.empty()) throw ConfigError("curve knots: empty list");
  return out;
}

}  // namespace

const char* to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::stable: return "stable";
    case ProcessKind::gamma_inhom: return "gamma_inhom";
    case ProcessKind::gs_homog: return "gs_homog";
    case ProcessKind::gs1: return "gs1";
    case ProcessKind::gs2: return "gs2";
    case ProcessKind::multistable: return "multistable";
    case ProcessKind::vg_inhom: return "vg_inhom";
  }
  return "?";
}

ProcessKind parse_process(const std::string& s) {
  const std::string v = lower(trim(s));
  for (auto k : {ProcessKind::stable, ProcessKind::gamma_inhom, ProcessKind::gs_homog, ProcessKind::gs1,
                 ProcessKind::gs2, ProcessKind::multistable, ProcessKind::vg_inhom})
    if (v == to_string(k)) return k;
  throw ConfigError("process: unknown process '" + s +
                    "' (stable, gamma_inhom, gs_homog, gs1, gs2, multistable, vg_inhom)");
}

Curve parse_curve(const std::string& text) {
  const std::string s = trim(text);
  try {
    if (s.rfind("constant", 0) == 0) return Curve::piecewise_constant(parse_pairs(s.substr(8)));
    if (s.rfind("linear", 0) == 0) return Curve::piecewise_linear(parse_pairs(s.substr(6)));
    if (!s.empty() && s.front() == '[') return Curve::piecewise_constant(parse_pairs(s));
    return Curve::constant(parse_number(s, "curve"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("curve: ") + e.what());
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty list");
  if (s.front() != '[') return {parse_number(s, "list")};
  if (s.back() != ']') throw ConfigError("list: missing ']'");
  s = s.substr(1, s.size() - 2);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(parse_number(item, "list item"));
  return out;
}

void set_config_value(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = lower(trim(key_in));
  const std::string value = trim(value_in);
  static const std::map<std::string, std::function<void(RunConfig&, const std::string&)>> setters = {
      {"process", [](RunConfig& c, const std::string& v) { c.process = parse_process(v); }},
      {"alpha", [](RunConfig& c, const std::string& v) { c.alpha = parse_curve(v); }},
      {"theta", [](RunConfig& c, const std::string& v) { c.theta = parse_curve(v); }},
      {"b", [](RunConfig& c, const std::string& v) { c.b = parse_curve(v); }},
      {"mgf_bound", [](RunConfig& c, const std::string& v) { c.mgf_bound = parse_number(v, "mgf_bound"); }},
      {"t", [](RunConfig& c, const std::string& v) { c.t = parse_number(v, "t"); }},
      {"n_steps", [](RunConfig& c, const std::string& v) { c.n_steps = static_cast<int>(parse_integer(v, "n_steps")); }},
      {"n_paths", [](RunConfig& c, const std::string& v) {
         const auto n = parse_integer(v, "n_paths");
         if (n <= 0) throw ConfigError("n_paths must be positive");
         c.n_paths = static_cast<std::size_t>(n);
       }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_integer(v, "seed")); }},
      {"threads", [](RunConfig& c, const std::string& v) { c.threads = static_cast<int>(parse_integer(v, "threads")); }},
      {"vg_mode", [](RunConfig& c, const std::string& v) {
         const auto m = lower(v);
         if (m == "brownian_subordination" || m == "brownian") c.vg_mode = VgMode::brownian_subordination;
         else if (m == "gamma_difference" || m == "difference") c.vg_mode = VgMode::gamma_difference;
         else throw ConfigError("vg_mode: expected brownian_subordination or gamma_difference");
       }},
      {"grid_n", [](RunConfig& c, const std::string& v) { c.grid_n = static_cast<std::size_t>(parse_integer(v, "grid_n")); }},
      {"grid_extent", [](RunConfig& c, const std::string& v) { c.grid_extent = parse_number(v, "grid_extent"); }},
      {"allow_window", [](RunConfig& c, const std::string& v) { c.allow_window = parse_bool(v, "allow_window"); }},
      {"x_values", [](RunConfig& c, const std::string& v) { c.x_values = parse_list(v); }},
      {"x_min", [](RunConfig& c, const std::string& v) { c.x_min = parse_number(v, "x_min"); }},
      {"x_max", [](RunConfig& c, const std::string& v) { c.x_max = parse_number(v, "x_max"); }},
      {"x_count", [](RunConfig& c, const std::string& v) { c.x_count = static_cast<int>(parse_integer(v, "x_count")); }},
      {"levy_time", [](RunConfig& c, const std::string& v) { c.levy_time = parse_number(v, "levy_time"); }},
      {"q_lo", [](RunConfig& c, const std::string& v) { c.q_lo = parse_number(v, "q_lo"); }},
      {"q_hi", [](RunConfig& c, const std::string& v) { c.q_hi = parse_number(v, "q_hi"); }},
      {"tail_levels", [](RunConfig& c, const std::string& v) { c.tail_levels = static_cast<int>(parse_integer(v, "tail_levels")); }},
      {"initial", [](RunConfig& c, const std::string& v) { c.initial = v; }},
      {"initial_centre", [](RunConfig& c, const std::string& v) { c.initial_centre = parse_number(v, "initial_centre"); }},
      {"initial_width", [](RunConfig& c, const std::string& v) { c.initial_width = parse_number(v, "initial_width"); }},
      {"t_start", [](RunConfig& c, const std::string& v) { c.t_start = parse_number(v, "t_start"); }},
      {"horizons", [](RunConfig& c, const std::string& v) { c.horizons = parse_list(v); }},
      {"adjoint", [](RunConfig& c, const std::string& v) { c.adjoint = parse_bool(v, "adjoint"); }},
      {"rel_tol", [](RunConfig& c, const std::string& v) { c.rel_tol = parse_number(v, "rel_tol"); }},
      {"k_max", [](RunConfig& c, const std::string& v) { c.k_max = static_cast<int>(parse_integer(v, "k_max")); }},
      {"out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
      {"format", [](RunConfig& c, const std::string& v) {
         const auto f = lower(v);
         if (f == "csv") c.format = OutputFormat::csv;
         else if (f == "binary") c.format = OutputFormat::binary;
         else throw ConfigError("format: expected csv or binary");
       }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + key_in + "'");
  it->second(cfg, value);
  cfg.raw[key] = value;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("sidecar is not valid JSON: ") + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object())
      throw ConfigError("sidecar has no \"config\" object");
    RunConfig cfg;
    for (const auto& [k, v] : j["config"].items())
      set_config_value(cfg, k, v.is_string() ? v.get<std::string>() : v.dump());
    return cfg;
  }
  return parse_config(buf.str());
}

ParamCurves RunConfig::curves() const {
  ParamCurves pc;
  pc.alpha = alpha;
  pc.theta = theta;
  pc.b = b;
  pc.t_max = std::max(t, horizons.empty() ? t : *std::max_element(horizons.begin(), horizons.end()));
  pc.mgf_bound = mgf_bound;
  return pc;
}

SymbolEval RunConfig::symbol() const {
  try {
    switch (process) {
      case ProcessKind::stable: return make_stable_symbol(alpha(0.0), theta(0.0));
      case ProcessKind::gamma_inhom: return make_gamma_inhom_symbol(b);
      case ProcessKind::gs_homog: {
        ParamCurves pc = curves();
        pc.b = Curve::constant(b(0.0));
        return make_gs2_symbol(pc);
      }
      case ProcessKind::gs1: return make_gs1_symbol(curves());
      case ProcessKind::gs2: return make_gs2_symbol(curves());
      case ProcessKind::multistable: return make_multistable_symbol(curves());
      case ProcessKind::vg_inhom: return make_vg_inhom_symbol(b);
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown process");
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(t > 0.0, "t must be positive");
  require(n_steps >= 1, "n_steps must be at least 1");
  require(threads >= 1, "threads must be at least 1");
  require(q_lo < q_hi && q_lo > 0.9 && q_hi < 1.0, "tail window needs 0.9 < q_lo < q_hi < 1");
  require(x_count >= 1, "x_count must be at least 1");
  require(rel_tol > 0.0 && rel_tol < 1e-3, "rel_tol must lie in (0, 1e-3)");
  require(k_max >= 2, "k_max must be at least 2");
  require(initial_width > 0.0, "initial_width must be positive");
  for (double h : horizons) require(h >= t_start, "horizons must not precede t_start");
  try {
    SpectralGrid g(grid_n, grid_extent);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  try {
    const ParamCurves pc = curves();
    switch (process) {
      case ProcessKind::stable:
      case ProcessKind::gs_homog:
        require(alpha.is_constant() && theta.is_constant(),
                std::string(to_string(process)) + " requires constant alpha and theta");
        require(process == ProcessKind::stable || b.is_constant(), "gs_homog requires constant b");
        check_admissible(alpha(0.0), theta(0.0));
        require(b(0.0) > 0.0, "b must be positive");
        break;
      case ProcessKind::gamma_inhom:
      case ProcessKind::vg_inhom: {
        ParamCurves only_b = pc;
        only_b.alpha = Curve::constant(0.5);
        only_b.theta = Curve::constant(0.0);
        only_b.validate();
        break;
      }
      case ProcessKind::gs1:
        require(b.is_constant(), "gs1 requires constant b");
        pc.validate();
        break;
      case ProcessKind::gs2:
        require(alpha.is_constant() && theta.is_constant(), "gs2 requires constant alpha and theta");
        pc.validate();
        break;
      case ProcessKind::multistable:
        pc.validate();
        break;
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  for (const auto& [k, v] : raw) os << k << " = " << v << "\n";
  return os.str();
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical()); }

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace geostable
