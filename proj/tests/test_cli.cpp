#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "geostable/specfun.hpp"

namespace fs = std::filesystem;
using namespace geostable;

namespace {

fs::path tmp_root() {
  const char* env = std::getenv("GEOSTABLE_TEST_TMP");
  fs::path p = env ? fs::path(env) : fs::temp_directory_path() / "geostable_cli_test";
  fs::create_directories(p);
  return p;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "geostable");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("exit codes") {
  const auto dir = (tmp_root() / "codes").string();
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"simulate", "--no-such-flag"}).code == 2);
  CHECK(run({"simulate", "--format", "xml"}).code == 2);
  const auto bad = run({"simulate", "--set", "alpha=1", "--out-dir", dir});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("alpha = 1") != std::string::npos);
  CHECK(run({"simulate", "--config", "/nonexistent.cfg"}).code == 2);
  CHECK(run({"levy", "--set", "process=stable", "--out-dir", dir}).code == 2);
  // aliasing on a coarse grid is a numerical failure
  CHECK(run({"density", "--set", "alpha=1.5", "--set", "grid_n=64", "--out-dir", dir}).code == 1);
}

TEST_CASE("simulate reports per-horizon statistics and is reproducible") {
  const auto d1 = tmp_root() / "sim1";
  const auto d2 = tmp_root() / "sim2";
  const std::vector<std::string> common = {"simulate",  "--set", "process=gs2", "--set", "alpha=2", "--set",
                                           "theta=0",   "--set", "b=1",         "--set", "t=2",     "--set",
                                           "n_paths=40000", "--set", "n_steps=4", "--seed", "77"};
  auto a1 = common;
  a1.insert(a1.end(), {"--out-dir", d1.string()});
  auto a2 = common;
  a2.insert(a2.end(), {"--out-dir", d2.string(), "--threads", "3"});
  const auto r1 = run(a1);
  REQUIRE(r1.code == 0);
  REQUIRE(run(a2).code == 0);
  CHECK(slurp(d1 / "paths.csv") == slurp(d2 / "paths.csv"));
  // variance ≈ 2bt at t = 2
  std::istringstream lines(r1.out);
  std::string line, last;
  while (std::getline(lines, line))
    if (line.find("wrote") == std::string::npos) last = line;
  std::istringstream ls(last);
  double t, mean, var;
  ls >> t >> mean >> var;
  CHECK(t == 2.0);
  CHECK(var == doctest::Approx(4.0).epsilon(0.05));

  const auto side = nlohmann::json::parse(slurp(d1 / "paths.csv.json"));
  CHECK(side["seed"] == 77);
  CHECK(side["config_hash"].get<std::string>().size() == 16);
  CHECK(side["shape"][1] == 5);
}

TEST_CASE("a sidecar reproduces its artifact") {
  const auto d1 = tmp_root() / "side1";
  REQUIRE(run({"simulate", "--set", "process=gs1", "--set", "alpha=0.5", "--set", "theta=-0.5", "--set",
               "n_paths=3000", "--format", "binary", "--out-dir", d1.string()})
              .code == 0);
  const auto d2 = tmp_root() / "side2";
  REQUIRE(run({"simulate", "--config", (d1 / "paths.bin.json").string(), "--out-dir", d2.string()}).code == 0);
  CHECK(slurp(d1 / "paths.bin") == slurp(d2 / "paths.bin"));
  CHECK(fs::file_size(d1 / "paths.bin") == 3000 * 101 * sizeof(double));
}

TEST_CASE("levy at theta = -alpha is the Mittag-Leffler closed form") {
  const auto d = tmp_root() / "levy";
  REQUIRE(run({"levy", "--set", "process=gs1", "--set", "alpha=0.5", "--set", "theta=-0.5", "--set", "b=1.5",
               "--set", "x_values=[0.1, 0.5, 2, 8]", "--out-dir", d.string()})
              .code == 0);
  const auto rows = csv(d / "levy.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "x");
  CHECK(rows[0].back() == "method");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double expect = 0.5 / x * mittag_leffler(0.5, -std::sqrt(x) / 1.5);
    CHECK(std::stod(rows[i][2]) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("solve with coinciding start and horizon returns the initial condition") {
  const auto d = tmp_root() / "solve";
  REQUIRE(run({"solve", "--set", "horizons=[0]", "--set", "initial=bump", "--set", "grid_n=512", "--out-dir",
               d.string()})
              .code == 0);
  const auto rows = csv(d / "solve.csv");
  REQUIRE(rows.size() == 513);
  // output is the normalized bump exp(−1/(1−x²)) itself
  const double scale = std::stod(rows[257][1]) / std::exp(-1.0);  // x = 0
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    const double bump = std::abs(x) < 1.0 ? scale * std::exp(-1.0 / (1.0 - x * x)) : 0.0;
    worst = std::max(worst, std::abs(std::stod(rows[i][1]) - bump));
  }
  CHECK(worst < 1e-13);

  // CSV initial condition round trip
  const auto init = tmp_root() / "init.csv";
  {
    std::ofstream o(init);
    o << "x,value\n";
    for (int i = 0; i <= 200; ++i) {
      const double x = -5.0 + 0.05 * i;
      o << x << "," << std::exp(-x * x) << "\n";
    }
  }
  REQUIRE(run({"solve", "--set", "horizons=[0, 0.5]", "--set", "initial=" + init.string(), "--set",
               "process=vg_inhom", "--set", "grid_n=1024", "--out-dir", d.string()})
              .code == 0);
  const auto r2 = csv(d / "solve.csv");
  CHECK(r2[0].size() == 3);
  CHECK(std::stod(r2[513][1]) == doctest::Approx(1.0).epsilon(1e-3));  // x = 0
}

TEST_CASE("density, tails, moments and validate emit artifacts") {
  const auto d = tmp_root() / "misc";
  CHECK(run({"density", "--set", "process=stable", "--set", "alpha=1.5", "--set", "grid_n=8192", "--set",
             "grid_extent=80", "--out-dir", d.string()})
            .code == 0);
  CHECK(fs::exists(d / "density.csv.json"));
  CHECK(run({"tails", "--set", "process=gs_homog", "--set", "alpha=0.7", "--set", "n_paths=100000", "--out-dir",
             d.string()})
            .code == 0);
  const auto side = nlohmann::json::parse(slurp(d / "tails.csv.json"));
  CHECK(side["slope"].get<double>() == doctest::Approx(-0.7).epsilon(0.1));
  CHECK(run({"moments", "--set", "process=gamma_inhom", "--set", "n_paths=10000", "--out-dir", d.string()}).code == 0);
  const auto v = run({"validate", "--criterion", "1", "--out-dir", d.string()});
  CHECK(v.code == 0);
  CHECK(v.out.find("criterion 1: PASS") != std::string::npos);
  CHECK(run({"validate", "--criterion", "12", "--out-dir", d.string()}).code == 2);
}
