#include "shardcast/sightings.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "shardcast/error.hpp"

namespace shardcast::trace {

namespace {

std::uint32_t intern(std::vector<std::string>& names,
                     std::unordered_map<std::string, std::uint32_t>& index,
                     std::string_view name) {
  auto it = index.find(std::string(name));
  if (it != index.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names.size());
  names.emplace_back(name);
  index.emplace(std::string(name), id);
  return id;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

}  // namespace

void SightingLog::add(std::int64_t timestamp, std::string_view device, std::string_view scanner,
                      std::int32_t rssi) {
  rows.push_back({timestamp, intern(device_names, device_lookup_, device),
                  intern(scanner_names, scanner_lookup_, scanner), rssi});
}

void SightingLog::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const Sighting& a, const Sighting& b) {
    if (a.device != b.device) return a.device < b.device;
    if (a.scanner != b.scanner) return a.scanner < b.scanner;
    return a.timestamp < b.timestamp;
  });
}

SightingLog parse_sightings(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  // Skip leading blank lines to find the header.
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw Error(ErrorCode::EmptyFile, "no header line");

  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  auto split = [delim](std::string_view s, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
      auto pos = s.find(delim, start);
      out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                  : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  };

  std::vector<std::string_view> fields;
  split(line, fields);
  constexpr std::array<std::string_view, 4> kColumns{"timestamp", "device_id", "scanner_id", "rssi"};
  std::array<std::size_t, 4> col{};
  col.fill(std::string::npos);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto name = lower(trim(fields[i]));
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      if (name == kColumns[c]) col[c] = i;
    }
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    if (col[c] == std::string::npos) {
      throw Error(ErrorCode::ParseError, "header lacks column '" + std::string(kColumns[c]) + "'",
                  lineno);
    }
  }
  const std::size_t needed = *std::max_element(col.begin(), col.end()) + 1;

  SightingLog log;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    split(line, fields);
    if (fields.size() < needed) throw Error(ErrorCode::ParseError, "too few fields", lineno);
    std::int64_t timestamp = 0;
    std::int32_t rssi = 0;
    if (!parse_number(fields[col[0]], timestamp) || timestamp < 0) {
      throw Error(ErrorCode::ParseError, "bad timestamp", lineno);
    }
    if (!parse_number(fields[col[3]], rssi)) {
      throw Error(ErrorCode::ParseError, "bad rssi", lineno);
    }
    const auto device = trim(fields[col[1]]);
    const auto scanner = trim(fields[col[2]]);
    if (device.empty() || scanner.empty()) {
      throw Error(ErrorCode::ParseError, "empty device or scanner id", lineno);
    }
    log.add(timestamp, device, scanner, rssi);
  }
  if (log.rows.empty()) throw Error(ErrorCode::EmptyFile, "no sightings");
  log.sort();
  return log;
}

SightingLog ingest_sightings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return parse_sightings(in);
}

void write_sightings(std::ostream& out, const SightingLog& log, char delimiter) {
  out << "timestamp" << delimiter << "device_id" << delimiter << "scanner_id" << delimiter
      << "rssi\n";
  for (const auto& s : log.rows) {
    out << s.timestamp << delimiter << log.device_names[s.device] << delimiter
        << log.scanner_names[s.scanner] << delimiter << s.rssi << '\n';
  }
}

}  // namespace shardcast::trace
