#include "shardcast/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_map>

#include "shardcast/beacon.hpp"
#include "shardcast/error.hpp"

namespace shardcast::sim {

namespace {

constexpr std::uint64_t kChannelStream = 0xC4A0'0000;
constexpr std::uint64_t kScannerStream = 0x5CA0'0000;

bool in_scan_window(Timestamp t, Timestamp phase, const ScanMode& mode) {
  const auto interval = mode.interval.count();
  auto offset = (t.count() - phase.count()) % interval;
  if (offset < 0) offset += interval;
  return offset < mode.window.count();
}

struct ShareKey {
  std::uint64_t mac;
  std::uint8_t id;
  ShareBody body;
  friend bool operator==(const ShareKey&, const ShareKey&) = default;
};

struct ShareKeyHash {
  std::size_t operator()(const ShareKey& k) const noexcept {
    std::uint64_t a = 0;
    std::memcpy(&a, k.body.data(), 8);
    return static_cast<std::size_t>((k.mac * 0x9E3779B97F4A7C15ULL) ^ a ^ k.id);
  }
};

struct Origin {
  std::uint32_t device;
  std::uint64_t generation;
};

using GroundTruth = std::unordered_map<ShareKey, Origin, ShareKeyHash>;

ShareKey key_of(const Share& s, MacToken mac) { return {mac.value, s.share_id, s.body}; }

GroundTruth build_ground_truth(const AirTrace& air) {
  GroundTruth truth;
  for (std::uint32_t d = 0; d < air.devices.size(); ++d) {
    for (const auto& e : air.devices[d].emissions) {
      truth.try_emplace(key_of(e.share, e.mac), Origin{d, e.generation});
    }
  }
  return truth;
}

// True when the working set still holds k distinct ids of one share set.
bool complete_set_present(std::span<const ReceivedShare> working, const GroundTruth& truth,
                          int k) {
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::bitset<256>> ids;
  for (const auto& r : working) {
    auto it = truth.find(key_of(r.share, r.mac));
    if (it == truth.end()) continue;
    auto& bits = ids[{it->second.device, it->second.generation}];
    bits.set(r.share.share_id);
    if (static_cast<int>(bits.count()) >= k) return true;
  }
  return false;
}

}  // namespace

AirTrace simulate_air(const SimConfig& config) {
  config.validate();
  AirTrace air;
  SeededRandom rng(config.seed);
  const auto bcfg = BroadcastConfig::make(config.params, config.t_share(), config.adv_interval());
  bcfg.validate();
  const Duration horizon = config.horizon();

  for (int d = 0; d < config.m_devices; ++d) {
    const Timestamp phase{static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(config.t_share().count())))};
    air.device_phase.push_back(phase);
    air.devices.push_back(schedule_trace(bcfg, horizon - phase,
                                         mix_seed(config.seed, static_cast<std::uint64_t>(d)),
                                         phase));
  }
  for (int s = 0; s < config.scanners; ++s) {
    air.scanner_phase.push_back(Timestamp{static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(config.scan_mode.interval.count())))});
  }

  struct Pending {
    Timestamp at;
    std::uint32_t device;
    std::size_t index;
  };
  std::vector<Pending> order;
  for (std::uint32_t d = 0; d < air.devices.size(); ++d) {
    const auto& em = air.devices[d].emissions;
    for (std::size_t i = 0; i < em.size(); ++i) order.push_back({em[i].at, d, i});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Pending& a, const Pending& b) { return a.at < b.at; });
  air.emitted = order.size();

  SeededRandom channel(mix_seed(config.seed, kChannelStream));
  air.per_scanner.resize(static_cast<std::size_t>(config.scanners));
  for (const auto& p : order) {
    const BeaconEmission& e = air.devices[p.device].emissions[p.index];
    const beacon::Frame frame = beacon::encode_frame(e.share);
    for (int s = 0; s < config.scanners; ++s) {
      if (config.loss_rate > 0.0 && channel.bernoulli(config.loss_rate)) continue;
      if (!in_scan_window(e.at, air.scanner_phase[static_cast<std::size_t>(s)], config.scan_mode)) {
        continue;
      }
      const auto decoded = beacon::decode_frame(frame);
      air.per_scanner[static_cast<std::size_t>(s)].push_back(
          {e.at, p.device, e.generation, decoded.share, e.mac});
    }
  }
  return air;
}

trace::SightingLog to_sighting_log(const AirTrace& air) {
  trace::SightingLog log;
  char mac[16];
  for (std::size_t s = 0; s < air.per_scanner.size(); ++s) {
    const std::string scanner = "scanner-" + std::to_string(s);
    for (const auto& r : air.per_scanner[s]) {
      std::snprintf(mac, sizeof mac, "%012llx", static_cast<unsigned long long>(r.mac.value));
      log.add(r.at.count() / 1'000'000, mac, scanner, beacon::kDefaultRefRssi);
    }
  }
  log.sort();
  return log;
}

std::optional<double> SimResult::p50_latency_s() const {
  if (resolutions.empty()) return std::nullopt;
  std::vector<double> v;
  v.reserve(resolutions.size());
  for (const auto& r : resolutions) v.push_back(r.latency_s());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

SimResult run_simulation(const SimConfig& config) {
  const AirTrace air = simulate_air(config);
  const GroundTruth truth = build_ground_truth(air);
  const int k = config.params.k;

  ReconstructorConfig rcfg;
  rcfg.params = config.params;
  rcfg.max_tries =
      config.max_tries ? config.max_tries : default_max_tries(config.m_devices, config.params);
  rcfg.group_by_mac = config.group_by_mac;
  // Device-side expiry (one cycle) plus one slot.
  rcfg.eviction_age = config.t_share() * (config.params.n + 1);

  SimResult result;
  std::vector<bool> resolved_anywhere(air.devices.size(), false);

  for (int s = 0; s < config.scanners; ++s) {
    const auto& receptions = air.per_scanner[static_cast<std::size_t>(s)];
    Reconstructor recon(rcfg);
    SeededRandom rng(mix_seed(config.seed, kScannerStream + static_cast<std::uint64_t>(s)));
    std::vector<std::optional<Timestamp>> first_audible(air.devices.size());
    std::vector<bool> resolved(air.devices.size(), false);

    auto handle = [&](const Recovery& rec) {
      std::optional<Origin> origin;
      bool consistent = true;
      for (const auto& share : rec.shares) {
        auto it = truth.find(key_of(share.share, share.mac));
        if (it == truth.end()) {
          consistent = false;
          break;
        }
        if (!origin) {
          origin = it->second;
        } else if (origin->device != it->second.device ||
                   origin->generation != it->second.generation) {
          consistent = false;
        }
      }
      if (!consistent || !origin || air.devices[origin->device].identity != rec.identifier) {
        ++result.false_bindings;
        return;
      }
      const auto d = origin->device;
      if (!resolved[d]) {
        resolved[d] = true;
        resolved_anywhere[d] = true;
        result.resolutions.push_back({s, d, *first_audible[d], rec.recovered_at});
      }
    };

    auto flush = [&](Timestamp now) {
      // Bounded so that an unlucky budget exhaustion cannot spin forever.
      for (int guard = 0; guard < 10'000; ++guard) {
        if (!complete_set_present(recon.working_set(), truth, k)) break;
        if (auto rec = recon.reconstruct(now, rng)) handle(*rec);
      }
    };

    const Duration epoch = config.t_share() * config.params.n;
    Timestamp epoch_end{epoch};
    for (const auto& r : receptions) {
      if (!first_audible[r.device]) first_audible[r.device] = r.at;
      const ReceivedShare share{r.share, r.at, r.mac};
      if (config.trigger == Trigger::PerShare) {
        if (recon.ingest(share)) {
          if (auto rec = recon.reconstruct(r.at, rng)) handle(*rec);
        }
      } else {
        while (r.at >= epoch_end) {
          flush(epoch_end);
          epoch_end += epoch;
        }
        recon.ingest(share);
      }
    }
    if (config.trigger == Trigger::PerEpoch) flush(std::max(epoch_end, Timestamp{config.horizon()}));

    const auto report = recon.report();
    result.per_scanner.push_back(report);
    result.recoveries += report.identifiers_recovered;
    result.total_tries += report.total_tries;
  }

  result.undetected = static_cast<int>(
      std::count(resolved_anywhere.begin(), resolved_anywhere.end(), false));
  result.mean_ntries = result.recoveries
                           ? static_cast<double>(result.total_tries) /
                                 static_cast<double>(result.recoveries)
                           : 0.0;
  std::sort(result.resolutions.begin(), result.resolutions.end(),
            [](const Resolution& a, const Resolution& b) {
              return std::tie(a.scanner, a.device) < std::tie(b.scanner, b.device);
            });
  return result;
}

AggregateResult run_trials(const SimConfig& config) {
  config.validate();
  AggregateResult agg;
  agg.trials = config.trials;
  std::vector<double> per_trial;
  std::vector<double> latencies;
  for (int t = 0; t < config.trials; ++t) {
    SimConfig c = config;
    c.seed = mix_seed(config.seed, static_cast<std::uint64_t>(t));
    const SimResult r = run_simulation(c);
    agg.recoveries += r.recoveries;
    agg.total_tries += r.total_tries;
    agg.false_bindings += r.false_bindings;
    agg.undetected += r.undetected;
    if (r.recoveries) per_trial.push_back(r.mean_ntries);
    for (const auto& res : r.resolutions) latencies.push_back(res.latency_s());
  }
  agg.mean_ntries = agg.recoveries ? static_cast<double>(agg.total_tries) /
                                         static_cast<double>(agg.recoveries)
                                   : 0.0;
  if (per_trial.size() > 1) {
    double mean = 0.0;
    for (double v : per_trial) mean += v;
    mean /= static_cast<double>(per_trial.size());
    double ss = 0.0;
    for (double v : per_trial) ss += (v - mean) * (v - mean);
    agg.ntries_sd = std::sqrt(ss / static_cast<double>(per_trial.size() - 1));
  }
  if (!latencies.empty()) {
    std::sort(latencies.begin(), latencies.end());
    const std::size_t mid = latencies.size() / 2;
    agg.p50_latency_s = latencies.size() % 2 ? latencies[mid]
                                             : 0.5 * (latencies[mid - 1] + latencies[mid]);
  }
  return agg;
}

std::vector<SweepRow> sweep(std::span<const SimConfig> configs, int jobs) {
  if (configs.empty()) throw Error(ErrorCode::EmptyConfigList, "sweep needs at least one config");
  for (const auto& c : configs) c.validate();
  std::vector<SweepRow> rows(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      rows[i] = {configs[i], run_trials(configs[i])};
    }
  };
  const int workers = std::clamp(jobs, 1, static_cast<int>(configs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return rows;
}

void write_results(std::ostream& out, std::span<const SweepRow> rows) {
  out << "k\tn\tnodes\tloss_rate\tscan_mode\tmean_ntries\tp50_latency_s\tundetected\tntries_sd"
         "\ttrials\n";
  char buf[64];
  for (const auto& row : rows) {
    const auto& c = row.config;
    const auto& r = row.result;
    out << c.params.k << '\t' << c.params.n << '\t' << c.m_devices << '\t';
    std::snprintf(buf, sizeof buf, "%g", c.loss_rate);
    out << buf << '\t' << c.scan_mode.name() << '\t';
    std::snprintf(buf, sizeof buf, "%.2f", r.mean_ntries);
    out << buf << '\t';
    if (r.p50_latency_s) {
      std::snprintf(buf, sizeof buf, "%.3f", *r.p50_latency_s);
      out << buf;
    } else {
      out << "nan";
    }
    out << '\t' << r.undetected << '\t';
    std::snprintf(buf, sizeof buf, "%.2f", r.ntries_sd);
    out << buf << '\t' << r.trials << '\n';
  }
}

}  // namespace shardcast::sim
