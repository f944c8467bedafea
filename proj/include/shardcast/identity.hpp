#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "shardcast/random.hpp"
#include "shardcast/shamir.hpp"
#include "shardcast/time.hpp"

namespace shardcast {

inline constexpr std::size_t kIdentifierSize = 16;
inline constexpr std::size_t kRandomPartSize = 12;
inline constexpr std::size_t kShareBodySize = 16;

using IdentifierBytes = std::array<std::uint8_t, kIdentifierSize>;
using ShareBody = std::array<std::uint8_t, kShareBodySize>;

// 12 random bytes followed by their CRC32, big-endian. The checksum makes a
// recovered identifier self-verifying.
class DeviceIdentifier {
 public:
  static DeviceIdentifier generate(RandomSource& rng);
  static DeviceIdentifier from_random_part(std::span<const std::uint8_t, kRandomPartSize> part);

  const IdentifierBytes& bytes() const noexcept { return bytes_; }
  std::span<const std::uint8_t, kRandomPartSize> random_part() const noexcept {
    return std::span<const std::uint8_t, kRandomPartSize>(bytes_.data(), kRandomPartSize);
  }
  std::uint32_t checksum() const noexcept;

  friend bool operator==(const DeviceIdentifier&, const DeviceIdentifier&) = default;
  friend auto operator<=>(const DeviceIdentifier&, const DeviceIdentifier&) = default;

 private:
  IdentifierBytes bytes_{};
};

// True iff bytes 12..15 are the big-endian CRC32 of bytes 0..11. Throws
// Error(BadLength) unless candidate is exactly 16 bytes.
bool verify_identifier(std::span<const std::uint8_t> candidate);

struct Share {
  std::uint8_t share_id = 0;
  ShareBody body{};
  friend bool operator==(const Share&, const Share&) = default;
  friend auto operator<=>(const Share&, const Share&) = default;
};

struct ShareSet {
  std::vector<Share> shares;  // ids 1..n in order
  shamir::SchemeParams params;
  Timestamp created_at{};
  Duration expiry{};
  std::uint64_t generation = 0;

  // Inclusive boundary: expired at exactly created_at + expiry.
  bool expired(Timestamp now) const noexcept { return now >= created_at + expiry; }
};

ShareSet generate_share_set(const DeviceIdentifier& identity, const shamir::SchemeParams& params,
                            Duration expiry, Timestamp now, RandomSource& rng,
                            std::uint64_t generation = 0);

// Fresh polynomials for the same identifier; generation = previous + 1.
ShareSet regenerate_share_set(const ShareSet& previous, const DeviceIdentifier& identity,
                              Timestamp now, RandomSource& rng);

// Recovers the 16-byte identifier bytes from exactly k shares.
IdentifierBytes recover_identifier_bytes(std::span<const Share> shares, int k);

}  // namespace shardcast
