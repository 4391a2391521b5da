#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geostable {

/// One measured quantity against its threshold.
struct Check {
  std::string name;
  double measured = 0.0;
  std::string relation;  // "<=", ">=", "in", "<"
  double expected = 0.0;
  double expected_hi = 0.0;  // upper end for "in"
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;
  bool pass() const;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  int threads = 1;
};

inline constexpr int kCriterionCount = 11;

/// Runs criterion `id` (1..11).
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

/// "criterion N: PASS|FAIL  title (seconds)"
std::string summary_line(const CriterionResult& r);

/// Multi-line measured-vs-expected table of one criterion.
std::string detail_table(const CriterionResult& r);

}  // namespace geostable
