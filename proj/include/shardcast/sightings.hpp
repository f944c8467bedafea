#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shardcast::trace {

// One beacon sighting. Device and scanner tokens are interned into the
// owning SightingLog's name tables.
struct Sighting {
  std::int64_t timestamp = 0;  // epoch seconds
  std::uint32_t device = 0;
  std::uint32_t scanner = 0;
  std::int32_t rssi = 0;
  friend bool operator==(const Sighting&, const Sighting&) = default;
};

struct SightingLog {
  std::vector<std::string> device_names;
  std::vector<std::string> scanner_names;
  // Sorted by (device, scanner, timestamp).
  std::vector<Sighting> rows;

  // Interns the names and appends; call sort() once done.
  void add(std::int64_t timestamp, std::string_view device, std::string_view scanner,
           std::int32_t rssi);
  void sort();

 private:
  std::unordered_map<std::string, std::uint32_t> device_lookup_;
  std::unordered_map<std::string, std::uint32_t> scanner_lookup_;
};

// Delimiter-separated text with a header naming the columns timestamp,
// device_id, scanner_id and rssi (any order, extra columns ignored). Comma or
// tab is detected from the header. Errors: EmptyFile when there are no data
// rows, ParseError with the 1-based physical line number.
SightingLog parse_sightings(std::istream& in);
SightingLog ingest_sightings(const std::string& path);

void write_sightings(std::ostream& out, const SightingLog& log, char delimiter = '\t');

}  // namespace shardcast::trace
