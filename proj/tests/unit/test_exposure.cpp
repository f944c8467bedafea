#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "shardcast/error.hpp"
#include "shardcast/exposure.hpp"
#include "trace_oracle.hpp"

using namespace shardcast;
using namespace shardcast::trace;

namespace {

SightingLog log_of(std::initializer_list<std::int64_t> ts, const char* dev = "a", const char* scan = "s") {
  SightingLog log;
  for (auto t : ts) log.add(t, dev, scan, -50);
  log.sort();
  return log;
}

SightingLog parse(const std::string& text) {
  std::istringstream in(text);
  return parse_sightings(in);
}

}  // namespace

TEST_CASE("encounter examples") {
  auto e = extract_encounters(log_of({0, 1, 2}), 1);
  REQUIRE(e.size() == 1);
  CHECK(e[0].duration() == 3);
  CHECK(e[0].sighting_count == 3);

  e = extract_encounters(log_of({0, 5}), 3);
  REQUIRE(e.size() == 2);
  CHECK(e[0].duration() == 1);
  CHECK(e[1].duration() == 1);

  e = extract_encounters(log_of({0, 3}), 3);
  REQUIRE(e.size() == 1);
  CHECK(e[0].duration() == 4);
}

TEST_CASE("pairs never merge across devices or scanners") {
  SightingLog log;
  log.add(0, "a", "s1", -50);
  log.add(1, "a", "s2", -50);
  log.add(2, "b", "s1", -50);
  log.sort();
  CHECK(extract_encounters(log, 100).size() == 3);
}

TEST_CASE("raw exposure counts sightings") {
  CHECK(compute_raw_exposure(log_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10})) == 10);
  CHECK(compute_raw_exposure(SightingLog{}) == 0);
  const std::int64_t gaps[] = {1, 60};
  for (const auto& row : encounter_statistics(SightingLog{}, gaps)) {
    CHECK(row.encounters == 0);
    CHECK(row.total_duration == 0);
  }
}

TEST_CASE("identity scheme equals distinct seconds") {
  const auto log = log_of({5, 5, 6, 9});
  const auto r = compute_scheme_exposure(log, {1, 1, 1});
  CHECK(r.slots_exposed == 3);
  CHECK(r.raw_exposure_s == 4);
}

TEST_CASE("k-1 occupied slots hide a window") {
  // (3, 6, 1): window [0, 6) with slots 0 and 4 occupied.
  auto r = compute_scheme_exposure(log_of({0, 4}), {3, 6, 1});
  CHECK(r.slots_exposed == 0);
  CHECK(std::isinf(r.reduction_factor));
  r = compute_scheme_exposure(log_of({0, 4, 5}), {3, 6, 1});
  CHECK(r.slots_exposed == 3);
  CHECK(r.total_exposure_s == 3);
  // Same slots split across two windows.
  r = compute_scheme_exposure(log_of({4, 5, 6}), {3, 6, 1});
  CHECK(r.slots_exposed == 0);
}

TEST_CASE("scheme validation") {
  auto invalid = [](SchemeSpec s) {
    try {
      s.validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidScheme;
    }
    return false;
  };
  CHECK(invalid({3, 2, 1}));
  CHECK(invalid({0, 2, 1}));
  CHECK(invalid({1, 2, 0}));
  CHECK(invalid({1, 256, 1}));
  CHECK_FALSE(invalid({6, 6, 1}));
}

TEST_CASE("loader: columns, delimiters, ordering") {
  auto log = parse("timestamp,device_id,scanner_id,rssi\n30,d1,s1,-60\n10,d1,s1,-61\n20,d1,s1,-62\n");
  REQUIRE(log.rows.size() == 3);
  CHECK(log.rows[0].timestamp == 10);
  CHECK(log.rows[2].timestamp == 30);
  CHECK(log.rows[0].rssi == -61);

  log = parse("RSSI\tscanner_id\textra\tTimestamp\tdevice_id\n-70\tsx\tjunk\t5\tdx\n");
  REQUIRE(log.rows.size() == 1);
  CHECK(log.rows[0].timestamp == 5);
  CHECK(log.device_names[log.rows[0].device] == "dx");
  CHECK(log.scanner_names[log.rows[0].scanner] == "sx");
}

TEST_CASE("loader errors") {
  auto error_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const Error& e) {
      return e;
    }
    FAIL("expected an error");
    return Error(ErrorCode::IoError, "");
  };
  auto e = error_of("timestamp,device_id,scanner_id,rssi\n1,d,s,loud\n");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.line() == 2);
  e = error_of("timestamp,device_id,scanner_id,rssi\n1,d,s,-5\n2,d,s\n");
  CHECK(e.line() == 3);
  e = error_of("timestamp,device_id,scanner_id,rssi\n-1,d,s,-5\n");
  CHECK(e.line() == 2);
  CHECK(error_of("timestamp,device_id,rssi\n").code() == ErrorCode::ParseError);
  CHECK(error_of("").code() == ErrorCode::EmptyFile);
  CHECK(error_of("timestamp,device_id,scanner_id,rssi\n").code() == ErrorCode::EmptyFile);
  try {
    ingest_sightings("/nonexistent/trace.csv");
    FAIL("expected IoError");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::IoError);
  }
}

TEST_CASE("bundled trace matches oracle fixtures") {
  const auto log = ingest_sightings(testing::data_path("trace_600s.tsv"));
  CHECK(log.device_names.size() == 3);
  CHECK(log.scanner_names.size() == 2);
  for (const auto& row : testing::read_tsv(testing::fixture_path("trace_600s_exposure.tsv"))) {
    const SchemeSpec spec{std::stoi(row[1]), std::stoi(row[2]), std::stoll(row[0])};
    CAPTURE(row[0] + "/" + row[1] + "/" + row[2]);
    const auto r = compute_scheme_exposure(log, spec);
    CHECK(r.slots_exposed == std::stoull(row[3]));
    CHECK(r.total_exposure_s == std::stoll(row[4]));
    CHECK(r.raw_exposure_s == std::stoull(row[5]));
  }
  std::vector<std::int64_t> gaps;
  std::vector<EncounterStats> expected;
  for (const auto& row : testing::read_tsv(testing::fixture_path("trace_600s_encounters.tsv"))) {
    gaps.push_back(std::stoll(row[0]));
    expected.push_back({std::stoll(row[0]), std::stoull(row[1]), std::stoll(row[2])});
  }
  CHECK(encounter_statistics(log, gaps) == expected);
}

TEST_CASE("streaming results equal the brute-force enumerator on random traces") {
  const SchemeSpec schemes[] = {{1, 1, 1}, {5, 6, 1}, {3, 5, 2}, {2, 3, 7}, {4, 4, 1}, {1, 8, 3}};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto log = testing::synthetic_log(seed, 3, 2, 1200, 3000);
    for (const auto& s : schemes) {
      CHECK(compute_scheme_exposure(log, s).slots_exposed ==
            testing::brute_slots_exposed(log, s.k, s.n, s.t));
      CHECK(compute_scheme_exposure(log, s, WindowAlignment::DeviceFirst).slots_exposed ==
            testing::brute_slots_exposed(log, s.k, s.n, s.t, true));
    }
    for (std::int64_t gap : {0, 1, 3, 30, 60}) {
      const auto b = testing::brute_encounters(log, gap);
      const auto enc = extract_encounters(log, gap);
      std::uint64_t sightings = 0;
      std::int64_t total = 0;
      for (const auto& e : enc) {
        sightings += e.sighting_count;
        total += e.duration();
      }
      CHECK(enc.size() == b.count);
      CHECK(total == b.total);
      CHECK(sightings == log.rows.size());
    }
  }
}

TEST_CASE("monotonicity in gap and threshold") {
  const std::int64_t gaps[] = {0, 1, 2, 3, 5, 10, 30, 60, 120};
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto log = testing::synthetic_log(seed, 4, 3, 3000, 10'000);
    const auto stats = encounter_statistics(log, gaps);
    for (std::size_t i = 1; i < stats.size(); ++i) {
      CHECK(stats[i].encounters <= stats[i - 1].encounters);
      CHECK(stats[i].total_duration >= stats[i - 1].total_duration);
    }
    for (int n : {3, 6}) {
      for (std::int64_t t : {1, 2, 5}) {
        std::uint64_t prev = std::numeric_limits<std::uint64_t>::max();
        for (int k = 1; k <= n; ++k) {
          const auto r = compute_scheme_exposure(log, {k, n, t});
          CHECK(r.slots_exposed <= prev);
          CHECK(r.total_exposure_s == static_cast<std::int64_t>(r.slots_exposed) * t);
          if (t == 1) CHECK(r.total_exposure_s <= static_cast<std::int64_t>(r.raw_exposure_s));
          prev = r.slots_exposed;
        }
      }
    }
  }
}

TEST_CASE("report writers") {
  std::ostringstream out;
  const ExposureReport rows[] = {{{5, 6, 1}, 10, 10, 40, 4.0}};
  write_exposure_report(out, rows);
  CHECK(out.str() == "t\tk\tn\tslots_exposed\ttotal_exposure_s\treduction_factor\n1\t5\t6\t10\t10\t4.0000\n");
  std::ostringstream enc;
  const EncounterStats stats[] = {{1, 3, 7}};
  write_encounter_stats(enc, stats);
  CHECK(enc.str() == "gap\tencounters\ttotal_duration\n1\t3\t7\n");
}
