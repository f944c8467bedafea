#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "shardcast/sightings.hpp"

namespace shardcast::trace {

struct Encounter {
  std::uint32_t device = 0;
  std::uint32_t scanner = 0;
  std::int64_t first_ts = 0;
  std::int64_t last_ts = 0;
  std::uint64_t sighting_count = 0;
  std::int64_t duration() const { return last_ts - first_ts + 1; }
  friend bool operator==(const Encounter&, const Encounter&) = default;
};

// Maximal runs of one (device, scanner) pair whose successive sightings are
// at most max_gap seconds apart. Expects log.rows sorted as SightingLog keeps
// them.
std::vector<Encounter> extract_encounters(const SightingLog& log, std::int64_t max_gap);

struct EncounterStats {
  std::int64_t gap = 0;
  std::uint64_t encounters = 0;
  std::int64_t total_duration = 0;
  friend bool operator==(const EncounterStats&, const EncounterStats&) = default;
};

std::vector<EncounterStats> encounter_statistics(const SightingLog& log,
                                                 std::span<const std::int64_t> gaps);

// One second of exposure per sighting (1 Hz beaconing).
std::uint64_t compute_raw_exposure(const SightingLog& log);

struct SchemeSpec {
  int k = 1;
  int n = 1;
  std::int64_t t = 1;  // slot length, seconds
  // Error(InvalidScheme) unless 1 <= k <= n <= 255 and t >= 1.
  void validate() const;
};

enum class WindowAlignment {
  Epoch,        // windows at multiples of n * t
  DeviceFirst,  // windows start at the device's first sighting
};

struct ExposureReport {
  SchemeSpec scheme;
  std::uint64_t slots_exposed = 0;
  std::int64_t total_exposure_s = 0;  // slots_exposed * t
  std::uint64_t raw_exposure_s = 0;
  double reduction_factor = 0.0;  // raw / total, +inf when total == 0
};

// Each (device, scanner) timeline is cut into windows of n * t seconds and
// each window into n slots of t seconds. A window is exposed when sightings
// fall into at least k distinct slots; slots_exposed counts the occupied
// slots of exposed windows.
ExposureReport compute_scheme_exposure(const SightingLog& log, const SchemeSpec& scheme,
                                       WindowAlignment alignment = WindowAlignment::Epoch);

// Tab-separated: t k n slots_exposed total_exposure_s reduction_factor.
void write_exposure_report(std::ostream& out, std::span<const ExposureReport> rows);
// Tab-separated: gap encounters total_duration.
void write_encounter_stats(std::ostream& out, std::span<const EncounterStats> rows);

}  // namespace shardcast::trace
