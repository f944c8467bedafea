#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "shardcast/identity.hpp"
#include "shardcast/random.hpp"
#include "shardcast/shamir.hpp"
#include "shardcast/time.hpp"

namespace shardcast {

// Opaque stand-in for a 48-bit non-resolvable random private address.
struct MacToken {
  std::uint64_t value = 0;
  friend auto operator<=>(const MacToken&, const MacToken&) = default;
};

MacToken random_mac_token(RandomSource& rng);

inline constexpr Duration kAdvIntervalUnit{625};
inline constexpr Duration kAdvIntervalMin{20'000};
inline constexpr Duration kAdvIntervalMax{10'240'000};

struct BroadcastConfig {
  Duration t_share{};
  Duration adv_interval{};
  shamir::SchemeParams params;
  Duration expiry{};
  // Allow advertising intervals above 10.24 s (BLE 5.2 extended range).
  bool extended_adv_range = false;

  // Default expiry is one full transmission cycle, n * t_share.
  static BroadcastConfig make(const shamir::SchemeParams& params, Duration t_share,
                              Duration adv_interval, std::optional<Duration> expiry = {});

  // Error(InvalidConfig) unless adv_interval is a multiple of 0.625 ms within
  // range, adv_interval <= t_share and expiry > 0; params must be valid.
  void validate() const;
};

struct BeaconEmission {
  Timestamp at{};
  Share share;
  MacToken mac;
  std::uint64_t generation = 0;
};

struct BroadcastState {
  DeviceIdentifier identity;
  ShareSet current_set;
  std::vector<std::uint8_t> remaining;  // ids not yet sent this cycle
  Share current_share;
  Timestamp slot_started_at{};
  Timestamp next_emission_at{};
  MacToken mac_token;
};

BroadcastState start_broadcast(const DeviceIdentifier& identity, const BroadcastConfig& config,
                               Timestamp start, RandomSource& rng);

// Emits every beacon scheduled at or before now. A slot lasts t_share; when it
// ends the next share is drawn uniformly from those not yet sent. The set is
// regenerated (and the MAC token rotated) once all n shares went out or when
// the set expires, whichever comes first.
std::vector<BeaconEmission> broadcaster_tick(BroadcastState& state, const BroadcastConfig& config,
                                             Timestamp now, RandomSource& rng);

struct DeviceTrace {
  DeviceIdentifier identity;
  std::vector<BeaconEmission> emissions;
};

// All emissions in [start, start + horizon) for one device whose identity
// and schedule derive from seed.
DeviceTrace schedule_trace(const BroadcastConfig& config, Duration horizon, std::uint64_t seed,
                           Timestamp start = Timestamp{});

}  // namespace shardcast
