#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "shardcast/shamir.hpp"
#include "shardcast/time.hpp"

namespace shardcast::sim {

enum class ScanKind { Continuous, Balanced, LowPower, Custom };

// Scanner duty cycle: receives during the first `window` of every `interval`.
struct ScanMode {
  ScanKind kind = ScanKind::Continuous;
  Duration window{1'000'000};
  Duration interval{1'000'000};

  static ScanMode continuous();
  static ScanMode balanced();   // 2 s every 3 s
  static ScanMode low_power();  // 0.5 s every 5 s
  static ScanMode custom(Duration window, Duration interval);

  // "continuous", "balanced", "low_power" or "custom:<window_s>/<interval_s>".
  static ScanMode parse(std::string_view text);
  std::string name() const;
  double duty_cycle() const;

  friend bool operator==(const ScanMode&, const ScanMode&) = default;
};

// How a scanner schedules reconstruction work.
//  PerShare: run the search loop on every newly received share.
//  PerEpoch: buffer receptions and, at each n * t_share epoch boundary, run
//            the loop repeatedly while a complete share set is present.
enum class Trigger { PerShare, PerEpoch };

std::string_view to_string(Trigger trigger) noexcept;

struct SimConfig {
  int m_devices = 1;
  int scanners = 1;
  shamir::SchemeParams params{3, 5};
  double t_share_s = 1.0;
  double adv_interval_s = 1.0;
  double loss_rate = 0.0;
  ScanMode scan_mode = ScanMode::continuous();
  double horizon_s = 0.0;  // <= 0 means one generation, n * t_share
  std::uint64_t seed = 1;
  int trials = 1;
  Trigger trigger = Trigger::PerShare;
  std::uint64_t max_tries = 0;  // 0 picks default_max_tries(m_devices)
  bool group_by_mac = false;

  Duration t_share() const { return from_seconds(t_share_s); }
  Duration adv_interval() const { return from_seconds(adv_interval_s); }
  Duration horizon() const;

  // Error(InvalidConfig) on out-of-range fields.
  void validate() const;
};

// Parses a key=value configuration and expands list-valued keys into the
// cartesian product (k_n x nodes x loss_rate x scan_mode, in that nesting
// order). Error(ParseError) carries the offending line number. When
// seed_specified is non-null it reports whether the text set `seed`.
std::vector<SimConfig> parse_sim_config(std::istream& in, bool* seed_specified = nullptr);
std::vector<SimConfig> load_sim_config(const std::string& path, bool* seed_specified = nullptr);

}  // namespace shardcast::sim
