#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "shardcast/identity.hpp"

// AltBeacon manufacturer-specific data carrying one share.
//
//   offset  size  field
//        0     2  manufacturer id (little-endian company identifier)
//        2     2  beacon code 0xBE 0xAC
//        4    20  beacon id: [0] share id, [1..16] share body, [17..19] zero
//       24     1  reference RSSI at 1 m (signed dBm)
//       25     1  manufacturer reserved
namespace shardcast::beacon {

inline constexpr std::size_t kFrameSize = 26;
inline constexpr std::size_t kBeaconIdSize = 20;
inline constexpr std::uint16_t kBeaconCode = 0xBEAC;
inline constexpr std::uint16_t kDefaultMfgId = 0x0118;  // Radius Networks
inline constexpr std::int8_t kDefaultRefRssi = -59;

using Frame = std::array<std::uint8_t, kFrameSize>;

struct DecodedFrame {
  Share share;
  std::int8_t ref_rssi = 0;
  std::uint16_t mfg_id = 0;
  std::uint8_t mfg_reserved = 0;
};

Frame encode_frame(const Share& share, std::uint16_t mfg_id = kDefaultMfgId,
                   std::int8_t ref_rssi = kDefaultRefRssi, std::uint8_t mfg_reserved = 0);

// Errors: BadLength (not 26 bytes), BadBeaconCode, BadShareId (id 0).
DecodedFrame decode_frame(std::span<const std::uint8_t> bytes);

}  // namespace shardcast::beacon
