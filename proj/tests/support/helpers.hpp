#pragma once

#include <atomic>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "premsel/corpus/corpus.hpp"
#include "premsel/error.hpp"
#include "premsel/fol/statement.hpp"

namespace premsel::testing {

/// Kind of the premsel::Error thrown by fn, "<none>" if nothing was thrown.
template <typename Fn>
std::string error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "<none>";
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("premsel_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

/// Parses `fof(...).` text into a corpus with the given deps/defs text.
inline corpus::Corpus corpus_from_text(const std::string& statements, const std::string& deps,
                                       const std::string& defs = {}) {
  return corpus::Corpus::build(fol::parse_file_text(statements), corpus::parse_deps(deps), corpus::parse_defs(defs));
}

}  // namespace premsel::testing
