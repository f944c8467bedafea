#include "shardcast/beacon.hpp"

#include <algorithm>
#include <string>

#include "shardcast/error.hpp"

namespace shardcast::beacon {

namespace {
constexpr std::size_t kIdOffset = 4;
constexpr std::size_t kRssiOffset = kIdOffset + kBeaconIdSize;
}  // namespace

Frame encode_frame(const Share& share, std::uint16_t mfg_id, std::int8_t ref_rssi,
                   std::uint8_t mfg_reserved) {
  Frame f{};
  f[0] = static_cast<std::uint8_t>(mfg_id & 0xFF);
  f[1] = static_cast<std::uint8_t>(mfg_id >> 8);
  f[2] = static_cast<std::uint8_t>(kBeaconCode >> 8);
  f[3] = static_cast<std::uint8_t>(kBeaconCode & 0xFF);
  f[kIdOffset] = share.share_id;
  std::copy(share.body.begin(), share.body.end(), f.begin() + kIdOffset + 1);
  f[kRssiOffset] = static_cast<std::uint8_t>(ref_rssi);
  f[kRssiOffset + 1] = mfg_reserved;
  return f;
}

DecodedFrame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kFrameSize) {
    throw Error(ErrorCode::BadLength,
                "frame must be 26 bytes, got " + std::to_string(bytes.size()));
  }
  const std::uint16_t code = static_cast<std::uint16_t>((bytes[2] << 8) | bytes[3]);
  if (code != kBeaconCode) throw Error(ErrorCode::BadBeaconCode, "beacon code is not 0xBEAC");
  if (bytes[kIdOffset] == 0) throw Error(ErrorCode::BadShareId, "share id 0");

  DecodedFrame out;
  out.mfg_id = static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
  out.share.share_id = bytes[kIdOffset];
  std::copy_n(bytes.begin() + kIdOffset + 1, kShareBodySize, out.share.body.begin());
  out.ref_rssi = static_cast<std::int8_t>(bytes[kRssiOffset]);
  out.mfg_reserved = bytes[kRssiOffset + 1];
  return out;
}

}  // namespace shardcast::beacon
