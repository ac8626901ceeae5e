#include "premsel/eval/ranking_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "premsel/corpus/corpus.hpp"
#include "premsel/error.hpp"

namespace premsel::eval {

std::string format_rankings(std::span<const RankingResult> rankings) {
  std::string out;
  char buf[64];
  for (const RankingResult& r : rankings) {
    for (const auto& [premise, score] : r.premises) {
      std::snprintf(buf, sizeof buf, "%.17g", score);
      out += r.conjecture;
      out += ' ';
      out += premise;
      out += ' ';
      out += buf;
      out += '\n';
    }
  }
  return out;
}

std::vector<RankingResult> parse_rankings(std::string_view text) {
  std::vector<RankingResult> out;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line(text.substr(start, end - start));
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    char conj[512], premise[512], score[128];
    char extra;
    if (std::sscanf(line.c_str(), "%511s %511s %127s %c", conj, premise, score, &extra) != 3) {
      throw DataError("FormatError", "rankings line " + std::to_string(line_no) + ": expected 'conjecture premise score'");
    }
    errno = 0;
    char* stop = nullptr;
    const double value = std::strtod(score, &stop);
    if (*stop != '\0' || errno == ERANGE || std::isnan(value)) {
      throw DataError("FormatError", "rankings line " + std::to_string(line_no) + ": bad score '" + score + "'");
    }
    if (out.empty() || out.back().conjecture != conj) out.push_back(RankingResult{conj, {}});
    out.back().premises.emplace_back(premise, value);
  }
  return out;
}

void write_rankings(const std::filesystem::path& path, std::span<const RankingResult> rankings) {
  corpus::write_text_file(path, format_rankings(rankings));
}

std::vector<RankingResult> read_rankings(const std::filesystem::path& path) {
  return parse_rankings(corpus::read_text_file(path));
}

}  // namespace premsel::eval
