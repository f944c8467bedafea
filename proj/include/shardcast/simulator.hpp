#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "shardcast/broadcaster.hpp"
#include "shardcast/reconstructor.hpp"
#include "shardcast/sightings.hpp"
#include "shardcast/sim_config.hpp"

namespace shardcast::sim {

// One beacon that survived the channel and fell inside a scan window.
struct Reception {
  Timestamp at{};
  std::uint32_t device = 0;
  std::uint64_t generation = 0;
  Share share;
  MacToken mac;
};

struct AirTrace {
  std::vector<DeviceTrace> devices;
  std::vector<Timestamp> device_phase;
  std::vector<Timestamp> scanner_phase;
  std::vector<std::vector<Reception>> per_scanner;
  std::size_t emitted = 0;
};

// Schedules every device, then applies independent per-scanner loss and the
// scan-window filter. Receptions per scanner are in timestamp order.
AirTrace simulate_air(const SimConfig& config);

// Receptions as a sighting log: device_id is the MAC token in hex (what a
// scanner observes), scanner_id is "scanner-<index>", timestamps are whole
// seconds and rssi is the frame's reference RSSI.
trace::SightingLog to_sighting_log(const AirTrace& air);

struct Resolution {
  int scanner = 0;
  std::uint32_t device = 0;
  Timestamp first_audible{};
  Timestamp recovered_at{};
  double latency_s() const { return to_seconds(recovered_at - first_audible); }
};

struct SimResult {
  std::vector<ReconstructionReport> per_scanner;
  // First resolution of each (scanner, device) pair.
  std::vector<Resolution> resolutions;
  std::uint64_t recoveries = 0;
  std::uint64_t total_tries = 0;
  // Recoveries whose shares did not all come from one share set.
  std::uint64_t false_bindings = 0;
  double mean_ntries = 0.0;  // total_tries / recoveries
  int undetected = 0;        // devices no scanner ever resolved

  std::optional<double> p50_latency_s() const;
};

SimResult run_simulation(const SimConfig& config);

// config.trials runs with seeds derived from config.seed.
struct AggregateResult {
  int trials = 0;
  std::uint64_t recoveries = 0;
  std::uint64_t total_tries = 0;
  std::uint64_t false_bindings = 0;
  double mean_ntries = 0.0;  // pooled: sum of tries / sum of recoveries
  double ntries_sd = 0.0;    // sample sd of per-trial ntries
  std::optional<double> p50_latency_s;
  int undetected = 0;  // summed over trials
};

AggregateResult run_trials(const SimConfig& config);

struct SweepRow {
  SimConfig config;
  AggregateResult result;
};

// One row per config, in input order. Independent configs run on up to
// `jobs` worker threads. Error(EmptyConfigList) for an empty input.
std::vector<SweepRow> sweep(std::span<const SimConfig> configs, int jobs = 1);

// Tab-separated results with one header row:
// k n nodes loss_rate scan_mode mean_ntries p50_latency_s undetected ntries_sd trials
void write_results(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace shardcast::sim
