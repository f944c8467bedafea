#pragma once

#include <cstdint>
#include <span>

namespace shardcast {

// CRC-32 (IEEE 802.3): reflected polynomial 0xEDB88320, init and final XOR
// 0xFFFFFFFF.
std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;

}  // namespace shardcast
