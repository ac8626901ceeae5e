#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "premsel/fol/statement.hpp"

namespace premsel::corpus {

using fol::Statement;

/// Chronological index of a statement; doubles as its position in the corpus.
using StatementId = std::size_t;

/// Conjecture name -> ATP-proof premise names.
using DepMap = std::map<std::string, std::vector<std::string>>;
/// Defined symbol -> defining statement name.
using DefMap = std::map<std::string, std::string>;

/// Immutable statement list plus dependency graph. Every dependency points
/// strictly backwards in chronological order.
class Corpus {
public:
  /// Validates and indexes. Throws DuplicateName, DanglingName, ChronologyError.
  static Corpus build(std::vector<Statement> statements, const DepMap& deps, const DefMap& defines);

  std::span<const Statement> statements() const { return statements_; }
  std::size_t size() const { return statements_.size(); }
  const Statement& operator[](StatementId id) const { return statements_[id]; }

  std::optional<StatementId> find(std::string_view name) const;
  /// Throws UnknownName.
  StatementId id_of(std::string_view name) const;
  const Statement& at(std::string_view name) const { return statements_[id_of(name)]; }

  /// Premise ids of a conjecture, ascending; empty for statements without deps.
  std::span<const StatementId> positives(StatementId conjecture) const;
  bool has_deps(StatementId id) const { return !positives(id).empty(); }

  /// Conjectures with at least one dependency, in corpus order.
  const std::vector<StatementId>& provable() const { return provable_; }

  const DefMap& defines() const { return defines_; }
  DepMap deps_by_name() const;

private:
  std::vector<Statement> statements_;
  std::unordered_map<std::string, StatementId> by_name_;
  std::vector<std::vector<StatementId>> positives_;
  std::vector<StatementId> provable_;
  DefMap defines_;
};

struct CorpusPaths {
  std::filesystem::path statements;
  std::filesystem::path deps;
  std::filesystem::path defs;

  /// statements.p, deps.txt and defs.txt inside `dir`.
  static CorpusPaths in_directory(const std::filesystem::path& dir);
};

Corpus load_corpus(const CorpusPaths& paths);

DepMap parse_deps(std::string_view text);
DefMap parse_defs(std::string_view text);

void write_corpus(const Corpus& corpus, const CorpusPaths& paths, std::string_view header_comment = {});

/// Statements strictly before `conjecture`, in corpus order. Throws UnknownName.
std::vector<std::string> available_premises(const Corpus& corpus, std::string_view conjecture);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace premsel::corpus
