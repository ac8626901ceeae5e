#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace premsel {

/// Coarse failure class; the CLI maps each one to an exit code.
enum class ErrorCategory { Usage, Data, Compute };

const char* category_name(ErrorCategory category);

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, std::string kind, const std::string& message);

  ErrorCategory category() const { return category_; }
  /// Short machine-readable error name, e.g. "ChronologyError".
  const std::string& kind() const { return kind_; }

private:
  ErrorCategory category_;
  std::string kind_;
};

class DataError : public Error {
public:
  DataError(std::string kind, const std::string& message)
      : Error(ErrorCategory::Data, std::move(kind), message) {}
};

class ComputeError : public Error {
public:
  ComputeError(std::string kind, const std::string& message)
      : Error(ErrorCategory::Compute, std::move(kind), message) {}
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& message)
      : Error(ErrorCategory::Usage, "UsageError", message) {}
};

class LexError : public DataError {
public:
  LexError(std::size_t position, unsigned char byte);
  std::size_t position() const { return position_; }
  unsigned char byte() const { return byte_; }

private:
  std::size_t position_;
  unsigned char byte_;
};

class ParseError : public DataError {
public:
  ParseError(std::size_t position, std::string expected, std::string found);
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

class ArityError : public DataError {
public:
  ArityError(const std::string& symbol, std::size_t first, std::size_t second);
};

class ShapeMismatch : public ComputeError {
public:
  explicit ShapeMismatch(const std::string& message)
      : ComputeError("ShapeMismatch", message) {}
};

}  // namespace premsel
