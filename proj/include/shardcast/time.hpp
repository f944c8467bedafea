#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

namespace shardcast {

// Simulation time: microseconds since the simulation epoch. BLE advertising
// intervals are multiples of 625 us, so integer microseconds keep every
// schedule exact.
using Duration = std::chrono::microseconds;
using Timestamp = std::chrono::microseconds;

inline Duration from_seconds(double seconds) {
  return Duration(static_cast<std::int64_t>(std::llround(seconds * 1e6)));
}

inline double to_seconds(Duration d) { return static_cast<double>(d.count()) * 1e-6; }

}  // namespace shardcast
