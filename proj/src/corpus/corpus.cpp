#include "premsel/corpus/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "premsel/error.hpp"

namespace premsel::corpus {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Calls fn(key, rest, line_no) for every `key: rest` line.
template <typename Fn>
void for_each_keyed_line(std::string_view text, const char* what, Fn&& fn) {
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '%' || line.starts_with("::")) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw DataError("FormatError", std::string(what) + " line " + std::to_string(line_no) +
                                         ": missing ':'");
    }
    const std::string_view key = trim(line.substr(0, colon));
    if (key.empty()) {
      throw DataError("FormatError", std::string(what) + " line " + std::to_string(line_no) +
                                         ": empty key");
    }
    fn(std::string(key), line.substr(colon + 1), line_no);
  }
}

}  // namespace

Corpus Corpus::build(std::vector<Statement> statements, const DepMap& deps, const DefMap& defines) {
  Corpus c;
  c.statements_ = std::move(statements);
  for (std::size_t i = 0; i < c.statements_.size(); ++i) {
    c.statements_[i].index = i;
    if (!c.by_name_.emplace(c.statements_[i].name, i).second) {
      throw DataError("DuplicateName", "duplicate statement name '" + c.statements_[i].name + "'");
    }
  }
  c.positives_.resize(c.statements_.size());
  for (const auto& [conj, premises] : deps) {
    const auto cid = c.find(conj);
    if (!cid) throw DataError("DanglingName", "deps: unknown conjecture '" + conj + "'");
    std::set<StatementId> ids;
    for (const std::string& p : premises) {
      const auto pid = c.find(p);
      if (!pid) throw DataError("DanglingName", "deps of '" + conj + "': unknown premise '" + p + "'");
      if (*pid >= *cid) {
        throw DataError("ChronologyError",
                        "'" + conj + "' depends on '" + p + "', which does not precede it");
      }
      ids.insert(*pid);
    }
    c.positives_[*cid].assign(ids.begin(), ids.end());
  }
  for (StatementId i = 0; i < c.statements_.size(); ++i) {
    if (!c.positives_[i].empty()) c.provable_.push_back(i);
  }
  for (const auto& [symbol, stmt] : defines) {
    if (!c.find(stmt)) {
      throw DataError("DanglingName", "defs: symbol '" + symbol + "' defined by unknown '" + stmt + "'");
    }
  }
  c.defines_ = defines;
  return c;
}

std::optional<StatementId> Corpus::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

StatementId Corpus::id_of(std::string_view name) const {
  const auto id = find(name);
  if (!id) throw DataError("UnknownName", "unknown statement '" + std::string(name) + "'");
  return *id;
}

std::span<const StatementId> Corpus::positives(StatementId conjecture) const {
  return positives_.at(conjecture);
}

DepMap Corpus::deps_by_name() const {
  DepMap out;
  for (const StatementId c : provable_) {
    auto& names = out[statements_[c].name];
    for (const StatementId p : positives_[c]) names.push_back(statements_[p].name);
  }
  return out;
}

CorpusPaths CorpusPaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "statements.p", dir / "deps.txt", dir / "defs.txt"};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("FileNotFound", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("FileError", "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

DepMap parse_deps(std::string_view text) {
  DepMap deps;
  for_each_keyed_line(text, "deps", [&](std::string key, std::string_view rest, std::size_t line) {
    if (deps.count(key)) {
      throw DataError("DuplicateName", "deps line " + std::to_string(line) + ": '" + key + "' repeated");
    }
    deps.emplace(std::move(key), split_words(rest));
  });
  return deps;
}

DefMap parse_defs(std::string_view text) {
  DefMap defs;
  for_each_keyed_line(text, "defs", [&](std::string key, std::string_view rest, std::size_t line) {
    const auto words = split_words(rest);
    if (words.size() != 1) {
      throw DataError("FormatError", "defs line " + std::to_string(line) + ": expected one statement name");
    }
    if (!defs.emplace(std::move(key), words.front()).second) {
      throw DataError("DuplicateName", "defs line " + std::to_string(line) + ": symbol defined twice");
    }
  });
  return defs;
}

Corpus load_corpus(const CorpusPaths& paths) {
  auto statements = fol::parse_file_text(read_text_file(paths.statements));
  if (statements.empty()) throw DataError("EmptyCorpus", "no statements in '" + paths.statements.string() + "'");
  const DepMap deps = parse_deps(read_text_file(paths.deps));
  const DefMap defs = std::filesystem::exists(paths.defs) ? parse_defs(read_text_file(paths.defs)) : DefMap{};
  return Corpus::build(std::move(statements), deps, defs);
}

void write_corpus(const Corpus& corpus, const CorpusPaths& paths, std::string_view header_comment) {
  std::string stmts;
  if (!header_comment.empty()) {
    stmts += "% ";
    stmts += header_comment;
    stmts += '\n';
  }
  for (const Statement& st : corpus.statements()) {
    stmts += fol::print_entry(st.name, st.role, st.formula);
    stmts += '\n';
  }
  std::string deps;
  for (const StatementId c : corpus.provable()) {
    deps += corpus[c].name;
    deps += ':';
    for (const StatementId p : corpus.positives(c)) {
      deps += ' ';
      deps += corpus[p].name;
    }
    deps += '\n';
  }
  std::string defs;
  for (const auto& [symbol, stmt] : corpus.defines()) defs += symbol + ": " + stmt + "\n";
  write_text_file(paths.statements, stmts);
  write_text_file(paths.deps, deps);
  write_text_file(paths.defs, defs);
}

std::vector<std::string> available_premises(const Corpus& corpus, std::string_view conjecture) {
  const StatementId id = corpus.id_of(conjecture);
  std::vector<std::string> out;
  out.reserve(id);
  for (StatementId i = 0; i < id; ++i) out.push_back(corpus[i].name);
  return out;
}

}  // namespace premsel::corpus
