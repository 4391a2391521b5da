#include <doctest.h>

#include "geostable/config.hpp"
#include "geostable/errors.hpp"

using namespace geostable;

TEST_CASE("curve syntax") {
  CHECK(parse_curve("0.7").is_constant());
  const auto s = parse_curve("constant [(0, 0.4), (1, 0.8)]");
  CHECK(s.kind() == Curve::Kind::piecewise_constant);
  CHECK(s(0.5) == 0.4);
  CHECK(s(1.5) == 0.8);
  const auto l = parse_curve("linear [(0,1),(1,2)]");
  CHECK(l(0.25) == doctest::Approx(1.25));
  CHECK(parse_curve("[(0,1),(2,3)]")(1.0) == 1.0);
  CHECK_THROWS_AS(parse_curve("linear [(0,1),(1"), ConfigError);
  CHECK_THROWS_AS(parse_curve("abc"), ConfigError);
}

TEST_CASE("lists") {
  CHECK(parse_list("[1, 2.5, -3]") == std::vector<double>{1.0, 2.5, -3.0});
  CHECK(parse_list("4") == std::vector<double>{4.0});
  CHECK_THROWS_AS(parse_list("[1, 2"), ConfigError);
}

TEST_CASE("config text") {
  const auto cfg = parse_config(R"(
    # two-regime subordinator
    process = gs1
    alpha = constant [(0, 0.4), (1, 0.8)]
    theta = constant [(0, -0.4), (1, -0.8)]
    t = 2        # horizon
    n_paths = 1000
    horizons = [0.5, 1]
  )");
  CHECK(cfg.process == ProcessKind::gs1);
  CHECK(cfg.t == 2.0);
  CHECK(cfg.n_paths == 1000);
  CHECK(cfg.horizons.size() == 2);
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.raw.size() == 6);
}

TEST_CASE("config errors name the line and the constraint") {
  try {
    parse_config("t = 1\nbogus = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  auto cfg = parse_config("alpha = 1\n");
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("alpha = 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("process = brownian\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("n_paths = -4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t = -1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("process = gs2\nalpha = linear [(0,0.5),(1,0.7)]\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("theta = 0.9\nalpha = 0.5\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse_config("grid_n = 1000\n").validate(), ConfigError);
}

TEST_CASE("config hash is canonical") {
  const auto a = parse_config("t = 2\nseed = 5\n");
  const auto b = parse_config("seed = 5\n\n t=2 # same\n");
  const auto c = parse_config("seed = 6\nt = 2\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
