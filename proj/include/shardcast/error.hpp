#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shardcast {

enum class ErrorCode {
  InvalidParams,
  ZeroInverse,
  DuplicateShareId,
  LengthMismatch,
  WrongShareCount,
  BadShareId,
  BadLength,
  BadBeaconCode,
  DivisionByZero,
  EmptyConfigList,
  InvalidConfig,
  ParseError,
  EmptyFile,
  InvalidScheme,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every domain failure in the library is reported through this type. The
// optional line number is set for parse failures of text inputs.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  // The message without the code and line decoration.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> line_;
};

}  // namespace shardcast
