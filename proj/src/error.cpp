#include "premsel/error.hpp"

#include <cstdio>

namespace premsel {

const char* category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Usage: return "UsageError";
    case ErrorCategory::Data: return "DataError";
    case ErrorCategory::Compute: return "ComputeError";
  }
  return "Error";
}

Error::Error(ErrorCategory category, std::string kind, const std::string& message)
    : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

namespace {
std::string describe_byte(std::size_t position, unsigned char byte) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "unexpected byte 0x%02X at offset %zu", byte, position);
  return buf;
}
}  // namespace

LexError::LexError(std::size_t position, unsigned char byte)
    : DataError("LexError", describe_byte(position, byte)), position_(position), byte_(byte) {}

ParseError::ParseError(std::size_t position, std::string expected, std::string found)
    : DataError("ParseError", "at token " + std::to_string(position) + ": expected " + expected +
                                  ", found " + found),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ArityError::ArityError(const std::string& symbol, std::size_t first, std::size_t second)
    : DataError("ArityError", "symbol '" + symbol + "' used with arity " + std::to_string(first) +
                                  " and " + std::to_string(second)) {}

}  // namespace premsel
