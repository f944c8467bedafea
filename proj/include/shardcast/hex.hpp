#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shardcast {

std::string to_hex(std::span<const std::uint8_t> bytes);

// Accepts upper or lower case, ignores embedded whitespace. Throws
// Error(ParseError) on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view text);

}  // namespace shardcast
