// Acceptance criteria runner: one PASS/FAIL line per criterion.
//   geostable_acceptance [--criterion N]... [--seed S] [--threads T] [--quiet]

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "geostable/acceptance.hpp"

int main(int argc, char** argv) {
  geostable::AcceptanceOptions opt;
  std::vector<int> ids;
  bool quiet = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << a << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    try {
      if (a == "--criterion") ids.push_back(std::stoi(next()));
      else if (a == "--seed") opt.seed = std::stoull(next());
      else if (a == "--threads") opt.threads = std::stoi(next());
      else if (a == "--quiet") quiet = true;
      else {
        std::cerr << "unknown argument " << a << "\n";
        return 2;
      }
    } catch (const std::exception&) {
      std::cerr << "bad value for " << a << "\n";
      return 2;
    }
  }
  if (ids.empty())
    for (int id = 1; id <= geostable::kCriterionCount; ++id) ids.push_back(id);

  bool all = true;
  for (int id : ids) {
    if (id < 1 || id > geostable::kCriterionCount) {
      std::cerr << "criterion must lie in 1.." << geostable::kCriterionCount << "\n";
      return 2;
    }
    const auto r = geostable::run_criterion(id, opt);
    all = all && r.pass();
    std::cout << geostable::summary_line(r) << "\n";
    if (!quiet) std::cout << geostable::detail_table(r);
    std::cout.flush();
  }
  return all ? 0 : 1;
}
