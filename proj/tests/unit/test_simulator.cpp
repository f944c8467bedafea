#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "shardcast/error.hpp"
#include "shardcast/simulator.hpp"

using namespace shardcast;
using namespace shardcast::sim;

namespace {

SimConfig base(int m, int k, int n) {
  SimConfig c;
  c.m_devices = m;
  c.params = {k, n};
  return c;
}

}  // namespace

TEST_CASE("single device needs one try") {
  auto c = base(1, 3, 5);
  c.trials = 50;
  const auto agg = run_trials(c);
  CHECK(agg.mean_ntries == 1.0);
  CHECK(agg.undetected == 0);
  CHECK(agg.recoveries == 50);
}

TEST_CASE("per-epoch mean tries for five devices at (4,5)") {
  auto c = base(5, 4, 5);
  c.trigger = Trigger::PerEpoch;
  c.trials = 500;
  c.seed = 2024;
  const auto agg = run_trials(c);
  CHECK(agg.mean_ntries == doctest::Approx(56).epsilon(0.25));
  CHECK(agg.false_bindings == 0);
}

TEST_CASE("lossless continuous scanning resolves everyone in one generation") {
  // Epoch triggering spends budget only while a complete set is present, so
  // a large budget stays cheap.
  for (int m : {1, 3, 6, 8}) {
    auto c = base(m, 4, 6);
    c.max_tries = 1'000'000;
    c.trigger = Trigger::PerEpoch;
    c.scanners = 2;
    c.trials = 20;
    const auto agg = run_trials(c);
    CHECK(agg.undetected == 0);
    CHECK(agg.false_bindings == 0);
  }
  for (int m : {1, 3}) {
    auto c = base(m, 3, 5);
    c.trigger = Trigger::PerShare;
    c.trials = 20;
    const auto agg = run_trials(c);
    CHECK(agg.false_bindings == 0);
    if (m == 1) CHECK(agg.undetected == 0);
  }
}

TEST_CASE("nothing resolves from fewer than k slots") {
  auto c = base(4, 3, 5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    c.seed = seed;
    const auto air = simulate_air(c);
    ReconstructorConfig rc;
    rc.params = c.params;
    rc.max_tries = 10'000;
    Reconstructor r(rc);
    SeededRandom rng(seed);
    for (const auto& rx : air.per_scanner[0]) {
      // Before (k - 1) * t_share every device has shown at most k - 1 slots.
      if (rx.at >= c.t_share() * (c.params.k - 1)) break;
      CHECK(r.on_share_received({rx.share, rx.at, rx.mac}, rng).empty());
    }
  }
}

TEST_CASE("results are deterministic per seed") {
  auto c = base(4, 3, 5);
  c.trials = 20;
  c.loss_rate = 0.3;
  c.scanners = 2;
  c.horizon_s = 30;
  const auto a = run_trials(c);
  const auto b = run_trials(c);
  CHECK(a.total_tries == b.total_tries);
  CHECK(a.recoveries == b.recoveries);
  CHECK(a.p50_latency_s == b.p50_latency_s);

  std::vector<SimConfig> grid;
  for (int m = 1; m <= 6; ++m) {
    auto g = c;
    g.m_devices = m;
    grid.push_back(g);
  }
  std::ostringstream serial, parallel;
  write_results(serial, sweep(grid, 1));
  write_results(parallel, sweep(grid, 4));
  CHECK(serial.str() == parallel.str());
}

TEST_CASE("empty sweep is an error") {
  try {
    sweep({}, 1);
    FAIL("expected EmptyConfigList");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyConfigList);
  }
}

TEST_CASE("per-slot reception probability under loss") {
  struct Case {
    double p;
    double t_share;
    double adv;
  };
  for (const auto cs : {Case{0.5, 5, 1}, Case{0.8, 2, 1}, Case{0.3, 1, 1}}) {
    auto c = base(25, 3, 5);
    c.loss_rate = cs.p;
    c.t_share_s = cs.t_share;
    c.adv_interval_s = cs.adv;
    c.scanners = 2;
    c.horizon_s = cs.t_share * 5 * 100;
    c.seed = 7;
    const auto air = simulate_air(c);
    const auto per_slot = static_cast<std::size_t>(cs.t_share / cs.adv);

    // Slot = (device, generation, share id). Only full slots count.
    using Slot = std::tuple<std::uint32_t, std::uint64_t, std::uint8_t>;
    std::map<Slot, std::size_t> emitted;
    for (std::uint32_t d = 0; d < air.devices.size(); ++d) {
      for (const auto& e : air.devices[d].emissions) ++emitted[{d, e.generation, e.share.share_id}];
    }
    std::size_t slots = 0, heard = 0;
    for (const auto& rx : air.per_scanner) {
      std::set<Slot> got;
      for (const auto& r : rx) got.insert({r.device, r.generation, r.share.share_id});
      for (const auto& [slot, count] : emitted) {
        if (count != per_slot) continue;
        ++slots;
        if (got.count(slot)) ++heard;
      }
    }
    CAPTURE(cs.p);
    REQUIRE(slots >= 10'000);
    const double expected = 1.0 - std::pow(cs.p, cs.t_share / cs.adv);
    CHECK(std::abs(static_cast<double>(heard) / static_cast<double>(slots) - expected) <= 0.02);
  }
}

TEST_CASE("low power duty cycle") {
  // Dense advertising: every interval sees the same number of beacons.
  {
    auto c = base(20, 3, 5);
    c.adv_interval_s = 0.1;
    c.horizon_s = 600;
    c.scan_mode = ScanMode::low_power();
    c.seed = 3;
    const auto air = simulate_air(c);
    REQUIRE(air.emitted >= 100'000);
    const double frac = static_cast<double>(air.per_scanner[0].size()) / static_cast<double>(air.emitted);
    CHECK(std::abs(frac - 0.1) <= 0.02);
  }
  // 1 Hz advertising aliases against the 5 s interval; phases average out
  // across seeds.
  {
    std::size_t emitted = 0, received = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto c = base(10, 3, 5);
      c.horizon_s = 60;
      c.scan_mode = ScanMode::low_power();
      c.seed = seed;
      const auto air = simulate_air(c);
      emitted += air.emitted;
      received += air.per_scanner[0].size();
    }
    REQUIRE(emitted >= 100'000);
    CHECK(std::abs(static_cast<double>(received) / static_cast<double>(emitted) - 0.1) <= 0.02);
  }
}

TEST_CASE("mean tries is non-decreasing in device count") {
  for (const shamir::SchemeParams p : {shamir::SchemeParams{3, 5}, shamir::SchemeParams{4, 5}}) {
    double previous = 0;
    for (int m = 1; m <= 8; ++m) {
      auto c = base(m, p.k, p.n);
      c.trigger = Trigger::PerEpoch;
      c.trials = 500;
      c.seed = 11;
      const auto agg = run_trials(c);
      CAPTURE(m);
      CHECK(agg.mean_ntries >= previous);
      previous = agg.mean_ntries;
    }
  }
}

TEST_CASE("latency respects the k-slot minimum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = base(5, 4, 5);
    c.seed = seed;
    const auto r = run_simulation(c);
    for (const auto& res : r.resolutions) {
      CHECK(res.recovered_at - res.first_audible >= c.t_share() * (c.params.k - 1));
    }
  }
}

TEST_CASE("sighting export") {
  auto c = base(2, 3, 5);
  c.scanners = 2;
  c.horizon_s = 20;
  const auto air = simulate_air(c);
  const auto log = to_sighting_log(air);
  CHECK(log.rows.size() == air.per_scanner[0].size() + air.per_scanner[1].size());
  CHECK(log.scanner_names.size() == 2);
  for (const auto& name : log.device_names) CHECK(name.size() == 12);
}

TEST_CASE("results table shape") {
  auto c = base(2, 3, 5);
  c.trials = 3;
  std::vector<SimConfig> grid{c, c};
  std::ostringstream out;
  write_results(out, sweep(grid, 2));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k\tn\tnodes\tloss_rate\tscan_mode\tmean_ntries\tp50_latency_s\tundetected\tntries_sd\ttrials");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 9);
  }
  CHECK(rows == 2);
}
