#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace drinfeld {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

struct AcceptanceOptions {
  std::optional<int> force_fail;       // mark this criterion failed regardless of the outcome
  std::vector<int> only;               // run a subset (empty = all)
  std::uint64_t seed = 0;              // base seed for the randomised samples
  std::function<void(const CriterionResult&)> on_result;  // progress callback
};

constexpr int kCriterionCount = 11;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});
// One line per criterion: "PASS  3  vanishing loci  (0.41 s / 10 s)  detail".
std::string format_result(const CriterionResult& r);
std::string acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace drinfeld
