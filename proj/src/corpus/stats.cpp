#include "premsel/corpus/stats.hpp"

#include <cstdio>
#include <unordered_map>

#include "premsel/error.hpp"

namespace premsel::corpus {

StatsReport corpus_stats(const Corpus& corpus) {
  if (corpus.size() == 0) throw DataError("EmptyCorpus", "corpus has no statements");
  StatsReport r;
  r.statements = corpus.size();
  std::unordered_map<std::string, std::size_t> occurrences;
  for (const Statement& st : corpus.statements()) {
    ++r.char_lengths[st.source_text.size()];
    ++r.token_lengths[st.tokens.size()];
    for (const fol::Token& t : st.tokens) {
      if (t.kind == fol::TokenKind::Identifier) ++occurrences[t.text];
    }
  }
  std::size_t rare = 0;
  for (const auto& [word, count] : occurrences) {
    ++r.word_occurrences[count];
    if (count < 10) ++rare;
  }
  r.distinct_words = occurrences.size();
  r.rare_word_fraction =
      occurrences.empty() ? 0.0 : static_cast<double>(rare) / static_cast<double>(occurrences.size());
  for (const StatementId c : corpus.provable()) ++r.dependency_counts[corpus.positives(c).size()];
  return r;
}

namespace {
void append_histogram(std::string& out, const char* title, const Histogram& h) {
  out += "[";
  out += title;
  out += "]\n";
  for (const auto& [value, count] : h) {
    out += std::to_string(value) + " " + std::to_string(count) + "\n";
  }
}
}  // namespace

std::string format_stats(const StatsReport& report) {
  std::string out = "statements " + std::to_string(report.statements) + "\n";
  out += "distinct_words " + std::to_string(report.distinct_words) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "rare_word_fraction %.6f\n", report.rare_word_fraction);
  out += buf;
  append_histogram(out, "char_lengths", report.char_lengths);
  append_histogram(out, "token_lengths", report.token_lengths);
  append_histogram(out, "word_occurrences", report.word_occurrences);
  append_histogram(out, "dependency_counts", report.dependency_counts);
  return out;
}

}  // namespace premsel::corpus
