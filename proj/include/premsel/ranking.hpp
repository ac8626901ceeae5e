#pragma once

#include <string>
#include <utility>
#include <vector>

namespace premsel {

/// Premises for one conjecture, best first. Scores are non-increasing.
struct RankingResult {
  std::string conjecture;
  std::vector<std::pair<std::string, double>> premises;

  bool operator==(const RankingResult&) const = default;
};

}  // namespace premsel
