#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "premsel/fol/statement.hpp"

namespace premsel::fol {

/// Byte-to-index table for the character-level models.
/// Index 0 is PAD, index 1 is UNK, the rest are assigned by descending corpus
/// frequency (ties by byte value), capped at `capacity` entries in total.
class CharVocab {
public:
  static constexpr std::uint32_t kPad = 0;
  static constexpr std::uint32_t kUnk = 1;
  static constexpr std::size_t kDefaultCapacity = 80;

  CharVocab();

  /// Explicit table; bytes absent from `bytes` map to UNK.
  static CharVocab from_bytes(std::span<const unsigned char> bytes);

  std::size_t size() const { return size_; }
  std::uint32_t index_of(unsigned char byte) const { return table_[byte]; }
  /// Bytes in index order, starting at index 2.
  std::vector<unsigned char> bytes() const;

  bool operator==(const CharVocab&) const = default;

private:
  std::array<std::uint32_t, 256> table_{};
  std::size_t size_ = 2;
};

CharVocab build_char_vocab(std::span<const Statement> statements,
                           std::size_t capacity = CharVocab::kDefaultCapacity);

/// Index sequence for `text`, truncated to max_len.
std::vector<std::uint32_t> char_encode(std::string_view text, const CharVocab& vocab,
                                       std::size_t max_len);
std::vector<std::uint32_t> char_encode(const Statement& statement, const CharVocab& vocab,
                                       std::size_t max_len);

}  // namespace premsel::fol
