#include "shardcast/broadcaster.hpp"

#include <numeric>
#include <string>

#include "shardcast/error.hpp"

namespace shardcast {

MacToken random_mac_token(RandomSource& rng) {
  // Non-resolvable private addresses have the two most significant bits clear.
  return MacToken{rng.next_u64() & 0x3FFF'FFFF'FFFFULL};
}

BroadcastConfig BroadcastConfig::make(const shamir::SchemeParams& params, Duration t_share,
                                      Duration adv_interval, std::optional<Duration> expiry) {
  BroadcastConfig c;
  c.params = params;
  c.t_share = t_share;
  c.adv_interval = adv_interval;
  c.expiry = expiry.value_or(t_share * params.n);
  return c;
}

void BroadcastConfig::validate() const {
  params.validate();
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (adv_interval.count() <= 0 || adv_interval.count() % kAdvIntervalUnit.count() != 0) {
    fail("advertising interval must be a positive multiple of 0.625 ms");
  }
  if (adv_interval < kAdvIntervalMin || (!extended_adv_range && adv_interval > kAdvIntervalMax)) {
    fail("advertising interval outside [20 ms, 10.24 s]");
  }
  if (t_share < adv_interval) fail("t_share must be at least one advertising interval");
  if (expiry.count() <= 0) fail("expiry must be positive");
}

namespace {

void pick_next_share(BroadcastState& state, RandomSource& rng) {
  const auto idx = static_cast<std::size_t>(rng.uniform_below(state.remaining.size()));
  const std::uint8_t id = state.remaining[idx];
  state.remaining[idx] = state.remaining.back();
  state.remaining.pop_back();
  state.current_share = state.current_set.shares[static_cast<std::size_t>(id - 1)];
}

void reset_cycle(BroadcastState& state) {
  state.remaining.resize(state.current_set.shares.size());
  std::iota(state.remaining.begin(), state.remaining.end(), std::uint8_t{1});
}

void rotate_mac(BroadcastState& state, RandomSource& rng) {
  MacToken next;
  do {
    next = random_mac_token(rng);
  } while (next == state.mac_token);
  state.mac_token = next;
}

void regenerate(BroadcastState& state, Timestamp at, RandomSource& rng) {
  state.current_set = regenerate_share_set(state.current_set, state.identity, at, rng);
  rotate_mac(state, rng);
  reset_cycle(state);
}

}  // namespace

BroadcastState start_broadcast(const DeviceIdentifier& identity, const BroadcastConfig& config,
                               Timestamp start, RandomSource& rng) {
  config.validate();
  BroadcastState state;
  state.identity = identity;
  state.current_set = generate_share_set(identity, config.params, config.expiry, start, rng);
  state.mac_token = random_mac_token(rng);
  reset_cycle(state);
  pick_next_share(state, rng);
  state.slot_started_at = start;
  state.next_emission_at = start;
  return state;
}

std::vector<BeaconEmission> broadcaster_tick(BroadcastState& state, const BroadcastConfig& config,
                                             Timestamp now, RandomSource& rng) {
  std::vector<BeaconEmission> out;
  while (state.next_emission_at <= now) {
    const Timestamp t = state.next_emission_at;
    while (t >= state.slot_started_at + config.t_share) {
      state.slot_started_at += config.t_share;
      if (state.remaining.empty()) regenerate(state, state.slot_started_at, rng);
      pick_next_share(state, rng);
    }
    if (state.current_set.expired(t)) {
      regenerate(state, t, rng);
      state.slot_started_at = t;
      pick_next_share(state, rng);
    }
    out.push_back({t, state.current_share, state.mac_token, state.current_set.generation});
    state.next_emission_at += config.adv_interval;
  }
  return out;
}

DeviceTrace schedule_trace(const BroadcastConfig& config, Duration horizon, std::uint64_t seed,
                           Timestamp start) {
  if (horizon.count() <= 0) throw Error(ErrorCode::InvalidConfig, "horizon must be positive");
  SeededRandom rng(seed);
  DeviceTrace trace{DeviceIdentifier::generate(rng), {}};
  BroadcastState state = start_broadcast(trace.identity, config, start, rng);
  trace.emissions = broadcaster_tick(state, config, start + horizon - Duration{1}, rng);
  return trace;
}

}  // namespace shardcast
