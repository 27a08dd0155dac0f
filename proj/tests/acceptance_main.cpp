// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "drinfeld/acceptance.hpp"

int main(int argc, char** argv) {
  drinfeld::AcceptanceOptions options;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--seed") options.seed = std::strtoull(argv[i + 1], nullptr, 10);
    else if (flag == "--force-fail") options.force_fail = std::atoi(argv[i + 1]);
    else {
      std::cerr << "unknown flag " << flag << "\n";
      return 2;
    }
  }
  options.on_result = [](const drinfeld::CriterionResult& r) { std::cout << drinfeld::format_result(r) << std::endl; };
  const auto results = drinfeld::run_acceptance(options);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
