#include "shardcast/error.hpp"

namespace shardcast {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::DuplicateShareId: return "DuplicateShareId";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::WrongShareCount: return "WrongShareCount";
    case ErrorCode::BadShareId: return "BadShareId";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::BadBeaconCode: return "BadBeaconCode";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EmptyConfigList: return "EmptyConfigList";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) {
    out += " (line " + std::to_string(*line) + ")";
  }
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)), code_(code), detail_(message), line_(line) {}

}  // namespace shardcast
