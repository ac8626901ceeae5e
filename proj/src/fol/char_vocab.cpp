#include "premsel/fol/char_vocab.hpp"

#include <algorithm>

namespace premsel::fol {

CharVocab::CharVocab() { table_.fill(kUnk); }

CharVocab CharVocab::from_bytes(std::span<const unsigned char> bytes) {
  CharVocab v;
  for (const unsigned char b : bytes) {
    if (v.table_[b] != kUnk) continue;
    v.table_[b] = static_cast<std::uint32_t>(v.size_++);
  }
  return v;
}

std::vector<unsigned char> CharVocab::bytes() const {
  std::vector<unsigned char> out(size_ - 2);
  for (std::size_t b = 0; b < 256; ++b) {
    if (table_[b] >= 2) out[table_[b] - 2] = static_cast<unsigned char>(b);
  }
  return out;
}

CharVocab build_char_vocab(std::span<const Statement> statements, std::size_t capacity) {
  std::array<std::uint64_t, 256> counts{};
  for (const Statement& st : statements) {
    for (const char c : st.source_text) ++counts[static_cast<unsigned char>(c)];
  }
  std::vector<unsigned char> order;
  for (std::size_t b = 0; b < 256; ++b) {
    if (counts[b]) order.push_back(static_cast<unsigned char>(b));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](unsigned char a, unsigned char b) { return counts[a] > counts[b]; });
  const std::size_t room = capacity > 2 ? capacity - 2 : 0;
  if (order.size() > room) order.resize(room);
  return CharVocab::from_bytes(order);
}

std::vector<std::uint32_t> char_encode(std::string_view text, const CharVocab& vocab,
                                       std::size_t max_len) {
  const std::size_t n = std::min(text.size(), max_len);
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = vocab.index_of(static_cast<unsigned char>(text[i]));
  return out;
}

std::vector<std::uint32_t> char_encode(const Statement& statement, const CharVocab& vocab,
                                       std::size_t max_len) {
  return char_encode(statement.source_text, vocab, max_len);
}

}  // namespace premsel::fol
