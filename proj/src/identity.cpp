#include "shardcast/identity.hpp"

#include <algorithm>

#include "shardcast/crc32.hpp"
#include "shardcast/error.hpp"

namespace shardcast {

namespace {

void store_be32(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v >> 24);
  out[1] = static_cast<std::uint8_t>(v >> 16);
  out[2] = static_cast<std::uint8_t>(v >> 8);
  out[3] = static_cast<std::uint8_t>(v);
}

std::uint32_t load_be32(const std::uint8_t* in) {
  return (std::uint32_t{in[0]} << 24) | (std::uint32_t{in[1]} << 16) |
         (std::uint32_t{in[2]} << 8) | std::uint32_t{in[3]};
}

}  // namespace

DeviceIdentifier DeviceIdentifier::generate(RandomSource& rng) {
  std::array<std::uint8_t, kRandomPartSize> part{};
  rng.fill(part);
  return from_random_part(part);
}

DeviceIdentifier DeviceIdentifier::from_random_part(
    std::span<const std::uint8_t, kRandomPartSize> part) {
  DeviceIdentifier id;
  std::copy(part.begin(), part.end(), id.bytes_.begin());
  store_be32(id.bytes_.data() + kRandomPartSize, crc32(part));
  return id;
}

std::uint32_t DeviceIdentifier::checksum() const noexcept {
  return load_be32(bytes_.data() + kRandomPartSize);
}

bool verify_identifier(std::span<const std::uint8_t> candidate) {
  if (candidate.size() != kIdentifierSize) {
    throw Error(ErrorCode::BadLength, "identifier must be 16 bytes");
  }
  return crc32(candidate.first(kRandomPartSize)) == load_be32(candidate.data() + kRandomPartSize);
}

ShareSet generate_share_set(const DeviceIdentifier& identity, const shamir::SchemeParams& params,
                            Duration expiry, Timestamp now, RandomSource& rng,
                            std::uint64_t generation) {
  auto points = shamir::split(identity.bytes(), params, rng);
  ShareSet set;
  set.params = params;
  set.created_at = now;
  set.expiry = expiry;
  set.generation = generation;
  set.shares.reserve(points.size());
  for (const auto& p : points) {
    Share s;
    s.share_id = p.id;
    std::copy(p.body.begin(), p.body.end(), s.body.begin());
    set.shares.push_back(s);
  }
  return set;
}

ShareSet regenerate_share_set(const ShareSet& previous, const DeviceIdentifier& identity,
                              Timestamp now, RandomSource& rng) {
  return generate_share_set(identity, previous.params, previous.expiry, now, rng,
                            previous.generation + 1);
}

IdentifierBytes recover_identifier_bytes(std::span<const Share> shares, int k) {
  std::array<shamir::ShareView, 255> views{};
  if (shares.size() > views.size()) {
    throw Error(ErrorCode::WrongShareCount, "too many shares");
  }
  for (std::size_t i = 0; i < shares.size(); ++i) {
    views[i] = {shares[i].share_id, shares[i].body};
  }
  IdentifierBytes out{};
  shamir::recover_into(std::span(views.data(), shares.size()), k, out);
  return out;
}

}  // namespace shardcast
