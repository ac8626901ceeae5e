#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "premsel/ranking.hpp"

namespace premsel::eval {

/// One `conjecture premise score` line per pair, rankings in order, premises
/// best first. Scores use round-trip precision.
std::string format_rankings(std::span<const RankingResult> rankings);

/// Inverse of format_rankings: consecutive lines with the same conjecture form
/// one ranking. Throws FormatError.
std::vector<RankingResult> parse_rankings(std::string_view text);

void write_rankings(const std::filesystem::path& path, std::span<const RankingResult> rankings);
std::vector<RankingResult> read_rankings(const std::filesystem::path& path);

}  // namespace premsel::eval
