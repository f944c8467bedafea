#include "shardcast/exposure.hpp"

#include <bitset>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "shardcast/error.hpp"

namespace shardcast::trace {

namespace {

bool same_pair(const Sighting& a, const Sighting& b) {
  return a.device == b.device && a.scanner == b.scanner;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<Encounter> extract_encounters(const SightingLog& log, std::int64_t max_gap) {
  std::vector<Encounter> out;
  const auto& rows = log.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Sighting& s = rows[i];
    if (i > 0 && same_pair(rows[i - 1], s) && s.timestamp - rows[i - 1].timestamp <= max_gap) {
      Encounter& e = out.back();
      e.last_ts = s.timestamp;
      ++e.sighting_count;
    } else {
      out.push_back({s.device, s.scanner, s.timestamp, s.timestamp, 1});
    }
  }
  return out;
}

std::vector<EncounterStats> encounter_statistics(const SightingLog& log,
                                                 std::span<const std::int64_t> gaps) {
  std::vector<EncounterStats> out;
  for (std::int64_t gap : gaps) {
    EncounterStats row{gap, 0, 0};
    for (const auto& e : extract_encounters(log, gap)) {
      ++row.encounters;
      row.total_duration += e.duration();
    }
    out.push_back(row);
  }
  return out;
}

std::uint64_t compute_raw_exposure(const SightingLog& log) { return log.rows.size(); }

void SchemeSpec::validate() const {
  if (k < 1 || n < k || n > 255 || t < 1) {
    throw Error(ErrorCode::InvalidScheme, "need 1 <= k <= n <= 255 and t >= 1, got k=" +
                                              std::to_string(k) + " n=" + std::to_string(n) +
                                              " t=" + std::to_string(t));
  }
}

ExposureReport compute_scheme_exposure(const SightingLog& log, const SchemeSpec& scheme,
                                       WindowAlignment alignment) {
  scheme.validate();
  const std::int64_t window = scheme.t * scheme.n;

  std::vector<std::int64_t> device_origin;
  if (alignment == WindowAlignment::DeviceFirst) {
    device_origin.assign(log.device_names.size(), std::numeric_limits<std::int64_t>::max());
    for (const auto& s : log.rows) {
      device_origin[s.device] = std::min(device_origin[s.device], s.timestamp);
    }
  }

  ExposureReport report;
  report.scheme = scheme;
  report.raw_exposure_s = compute_raw_exposure(log);

  // Single pass: the current window of the current pair is summarized by the
  // set of occupied slots.
  std::bitset<256> slots;
  std::int64_t current_window = 0;
  bool open = false;
  auto close = [&] {
    if (open && static_cast<int>(slots.count()) >= scheme.k) report.slots_exposed += slots.count();
    slots.reset();
    open = false;
  };

  const auto& rows = log.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Sighting& s = rows[i];
    const std::int64_t origin =
        alignment == WindowAlignment::DeviceFirst ? device_origin[s.device] : 0;
    const std::int64_t rel = s.timestamp - origin;
    const std::int64_t w = floor_div(rel, window);
    if (!open || w != current_window || (i > 0 && !same_pair(rows[i - 1], s))) {
      close();
      current_window = w;
      open = true;
    }
    slots.set(static_cast<std::size_t>((rel - w * window) / scheme.t));
  }
  close();

  report.total_exposure_s = static_cast<std::int64_t>(report.slots_exposed) * scheme.t;
  report.reduction_factor =
      report.total_exposure_s > 0
          ? static_cast<double>(report.raw_exposure_s) / static_cast<double>(report.total_exposure_s)
          : std::numeric_limits<double>::infinity();
  return report;
}

void write_exposure_report(std::ostream& out, std::span<const ExposureReport> rows) {
  out << "t\tk\tn\tslots_exposed\ttotal_exposure_s\treduction_factor\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.scheme.t << '\t' << r.scheme.k << '\t' << r.scheme.n << '\t' << r.slots_exposed
        << '\t' << r.total_exposure_s << '\t';
    if (std::isinf(r.reduction_factor)) {
      out << "inf";
    } else {
      std::snprintf(buf, sizeof buf, "%.4f", r.reduction_factor);
      out << buf;
    }
    out << '\n';
  }
}

void write_encounter_stats(std::ostream& out, std::span<const EncounterStats> rows) {
  out << "gap\tencounters\ttotal_duration\n";
  for (const auto& r : rows) out << r.gap << '\t' << r.encounters << '\t' << r.total_duration << '\n';
}

}  // namespace shardcast::trace
