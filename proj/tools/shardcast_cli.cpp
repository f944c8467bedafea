#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shardcast/beacon.hpp"
#include "shardcast/error.hpp"
#include "shardcast/exposure.hpp"
#include "shardcast/hex.hpp"
#include "shardcast/identity.hpp"
#include "shardcast/random.hpp"
#include "shardcast/shamir.hpp"
#include "shardcast/sightings.hpp"
#include "shardcast/sim_config.hpp"
#include "shardcast/simulator.hpp"

namespace {

using namespace shardcast;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  OsRandom os;
  const auto seed = os.next_u64();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

// Writes to the named file, or stdout when the path is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string read_all(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

// ---- split / recover ----

struct SplitArgs {
  int k = 0;
  int n = 0;
  std::string secret_hex;
  bool random = false;
  std::optional<std::uint64_t> seed;
};

int run_split(const SplitArgs& a) {
  if (a.k > a.n) throw UsageError("--k must not exceed --n");
  const shamir::SchemeParams params{a.k, a.n};
  params.validate();
  SeededRandom rng(resolve_seed(a.seed));
  std::vector<std::uint8_t> secret;
  if (a.random) {
    // A fresh self-verifying device identifier.
    const auto id = DeviceIdentifier::generate(rng);
    secret.assign(id.bytes().begin(), id.bytes().end());
  } else {
    secret = from_hex(a.secret_hex);
  }
  for (const auto& share : shamir::split(secret, params, rng)) {
    std::cout << static_cast<int>(share.id) << ':' << to_hex(share.body) << '\n';
  }
  return kExitOk;
}

struct RecoverArgs {
  std::string input;
  int k = 0;
  bool verify = false;
};

int run_recover(const RecoverArgs& a) {
  std::istringstream in(read_all(a.input));
  std::vector<shamir::SharePoints> shares;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "expected id:hex", lineno);
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(line.substr(0, colon), &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad share id", lineno);
    }
    if (id < 1 || id > 255) throw Error(ErrorCode::BadShareId, "share id out of range", lineno);
    shares.push_back({static_cast<std::uint8_t>(id), from_hex(line.substr(colon + 1))});
  }
  const int k = a.k > 0 ? a.k : static_cast<int>(shares.size());
  if (static_cast<int>(shares.size()) > k) shares.resize(static_cast<std::size_t>(k));
  const auto secret = shamir::recover(shares, k);
  if (a.verify && !verify_identifier(secret)) {
    throw Error(ErrorCode::InvalidParams, "recovered bytes fail the identifier checksum");
  }
  std::cout << to_hex(secret) << '\n';
  return kExitOk;
}

// ---- codec ----

struct EncodeArgs {
  int id = 0;
  std::string body_hex;
  int mfg_id = beacon::kDefaultMfgId;
  int ref_rssi = beacon::kDefaultRefRssi;
  int reserved = 0;
};

int run_encode(const EncodeArgs& a) {
  if (a.id < 1 || a.id > 255) throw Error(ErrorCode::BadShareId, "share id must be 1..255");
  const auto body = from_hex(a.body_hex);
  if (body.size() != kShareBodySize) {
    throw Error(ErrorCode::BadLength, "share body must be 16 bytes");
  }
  Share share;
  share.share_id = static_cast<std::uint8_t>(a.id);
  std::copy(body.begin(), body.end(), share.body.begin());
  const auto frame = beacon::encode_frame(share, static_cast<std::uint16_t>(a.mfg_id),
                                          static_cast<std::int8_t>(a.ref_rssi),
                                          static_cast<std::uint8_t>(a.reserved));
  std::cout << to_hex(frame) << '\n';
  return kExitOk;
}

int run_decode(const std::string& hex) {
  const auto bytes = from_hex(hex);
  const auto d = beacon::decode_frame(bytes);
  char mfg[8];
  std::snprintf(mfg, sizeof mfg, "0x%04x", d.mfg_id);
  std::cout << "share_id: " << static_cast<int>(d.share.share_id) << '\n'
            << "body: " << to_hex(d.share.body) << '\n'
            << "mfg_id: " << mfg << '\n'
            << "ref_rssi: " << static_cast<int>(d.ref_rssi) << '\n'
            << "reserved: " << static_cast<int>(d.mfg_reserved) << '\n';
  return kExitOk;
}

// ---- simulation ----

struct SimArgs {
  std::vector<std::string> configs;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int jobs = 1;
  std::string out;
  std::string sightings_out;
};

int run_simulate(const SimArgs& a) {
  std::vector<sim::SimConfig> configs;
  bool any_unseeded = false;
  for (const auto& path : a.configs) {
    bool seeded = false;
    auto part = sim::load_sim_config(path, &seeded);
    if (!seeded) any_unseeded = true;
    configs.insert(configs.end(), part.begin(), part.end());
  }
  if (configs.empty()) throw Error(ErrorCode::EmptyConfigList, "no configurations");
  std::optional<std::uint64_t> seed = a.seed;
  if (!seed && any_unseeded) seed = resolve_seed(std::nullopt);
  for (auto& c : configs) {
    if (seed) c.seed = *seed;
    if (a.trials) c.trials = *a.trials;
    c.validate();
  }
  const auto rows = sim::sweep(configs, a.jobs);
  Output out(a.out);
  sim::write_results(out.stream(), rows);
  if (!a.sightings_out.empty()) {
    // Receptions of the first configuration's first trial.
    auto first = configs.front();
    first.seed = mix_seed(first.seed, 0);
    const auto log = sim::to_sighting_log(sim::simulate_air(first));
    Output trace(a.sightings_out);
    trace::write_sightings(trace.stream(), log);
  }
  return kExitOk;
}

// ---- trace analysis ----

std::vector<std::int64_t> default_gaps() { return {1, 3, 30, 60}; }

struct AnalyzeArgs {
  std::string input;
  std::vector<int> k{5};
  std::vector<int> n{6};
  std::vector<std::int64_t> t{1};
  std::vector<std::int64_t> gaps;
  std::string alignment = "epoch";
  std::string out;
  std::string encounters_out;
};

int run_analyze(const AnalyzeArgs& a) {
  const auto alignment = a.alignment == "device-first" ? trace::WindowAlignment::DeviceFirst
                                                       : trace::WindowAlignment::Epoch;
  const auto log = trace::ingest_sightings(a.input);
  const auto raw = trace::compute_raw_exposure(log);

  std::vector<trace::ExposureReport> rows;
  trace::ExposureReport raw_row;
  raw_row.scheme = {1, 1, 1};
  raw_row.slots_exposed = raw;
  raw_row.total_exposure_s = static_cast<std::int64_t>(raw);
  raw_row.raw_exposure_s = raw;
  raw_row.reduction_factor = raw == 0 ? std::numeric_limits<double>::infinity() : 1.0;
  rows.push_back(raw_row);

  std::size_t schemes = 0;
  for (auto t : a.t) {
    for (int k : a.k) {
      for (int n : a.n) {
        if (k > n) continue;  // outside the product's valid region
        const trace::SchemeSpec spec{k, n, t};
        spec.validate();
        rows.push_back(trace::compute_scheme_exposure(log, spec, alignment));
        ++schemes;
      }
    }
  }
  if (schemes == 0) throw Error(ErrorCode::InvalidScheme, "no scheme with k <= n");

  Output out(a.out);
  trace::write_exposure_report(out.stream(), rows);
  if (!a.gaps.empty()) {
    const auto stats = trace::encounter_statistics(log, a.gaps);
    if (a.encounters_out.empty()) {
      out.stream() << '\n';
      trace::write_encounter_stats(out.stream(), stats);
    } else {
      Output enc(a.encounters_out);
      trace::write_encounter_stats(enc.stream(), stats);
    }
  }
  return kExitOk;
}

struct EncounterArgs {
  std::string input;
  std::vector<std::int64_t> gaps = default_gaps();
  std::string out;
};

int run_encounters(const EncounterArgs& a) {
  const auto log = trace::ingest_sightings(a.input);
  for (auto g : a.gaps) {
    if (g < 0) throw Error(ErrorCode::InvalidParams, "gaps must be non-negative");
  }
  Output out(a.out);
  trace::write_encounter_stats(out.stream(), trace::encounter_statistics(log, a.gaps));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shardcast: threshold-split beacon identifiers, simulation and trace analysis"};
  app.require_subcommand(1);
  std::function<int()> run;

  SplitArgs split;
  auto* s = app.add_subcommand("split", "Split a secret into n shares (id:hex lines)");
  s->add_option("--k", split.k, "Threshold")->required();
  s->add_option("--n", split.n, "Share count")->required();
  auto* secret_opt = s->add_option("--secret-hex", split.secret_hex, "Secret bytes as hex");
  auto* random_opt = s->add_flag("--random", split.random, "Split a fresh device identifier");
  secret_opt->excludes(random_opt);
  s->add_option("--seed", split.seed, "RNG seed");
  s->callback([&] {
    if (split.secret_hex.empty() && !split.random) {
      throw CLI::ValidationError("split", "one of --secret-hex or --random is required");
    }
    run = [&] { return run_split(split); };
  });

  RecoverArgs recover;
  auto* r = app.add_subcommand("recover", "Recover a secret from id:hex lines");
  r->add_option("--input", recover.input, "Share file (default stdin)");
  r->add_option("--k", recover.k, "Threshold (default: number of lines)");
  r->add_flag("--verify", recover.verify, "Fail unless the result is a valid identifier");
  r->callback([&] { run = [&] { return run_recover(recover); }; });

  EncodeArgs encode;
  auto* e = app.add_subcommand("encode", "Encode one share as an AltBeacon payload");
  e->add_option("--id", encode.id, "Share id")->required();
  e->add_option("--body-hex", encode.body_hex, "16-byte share body")->required();
  e->add_option("--mfg-id", encode.mfg_id, "Manufacturer id")->check(CLI::Range(0, 0xFFFF));
  e->add_option("--ref-rssi", encode.ref_rssi, "Reference RSSI (dBm)")->check(CLI::Range(-128, 127));
  e->add_option("--reserved", encode.reserved, "Reserved byte")->check(CLI::Range(0, 255));
  e->callback([&] { run = [&] { return run_encode(encode); }; });

  std::string decode_hex;
  auto* d = app.add_subcommand("decode", "Decode an AltBeacon payload");
  d->add_option("hex,--hex", decode_hex, "26-byte payload as hex")->required();
  d->callback([&] { run = [&] { return run_decode(decode_hex); }; });

  SimArgs simulate;
  auto* sm = app.add_subcommand("simulate", "Run the simulation grid of one config file");
  sm->add_option("--config", simulate.configs, "Config file")->required()->expected(1);
  sm->add_option("--seed", simulate.seed, "Seed (overrides the config)");
  sm->add_option("--trials", simulate.trials, "Trials per row")->check(CLI::PositiveNumber);
  sm->add_option("--jobs", simulate.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sm->add_option("--out", simulate.out, "Results TSV (default stdout)");
  sm->add_option("--sightings-out", simulate.sightings_out,
                 "Write the first row's first trial as a sighting trace");
  sm->callback([&] { run = [&] { return run_simulate(simulate); }; });

  SimArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Run several config files into one results table");
  sw->add_option("--config", sweep.configs, "Config file (repeatable)")->required();
  sw->add_option("--seed", sweep.seed, "Seed (overrides the configs)");
  sw->add_option("--trials", sweep.trials, "Trials per row")->check(CLI::PositiveNumber);
  sw->add_option("--jobs", sweep.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sw->add_option("--out", sweep.out, "Results TSV (default stdout)");
  sw->callback([&] { run = [&] { return run_simulate(sweep); }; });

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Exposure report for a sighting trace");
  an->add_option("--input", analyze.input, "Sighting trace (csv or tsv)")->required();
  an->add_option("--k", analyze.k, "Threshold list")->delimiter(',');
  an->add_option("--n", analyze.n, "Share count list")->delimiter(',');
  an->add_option("--t", analyze.t, "Slot length list (s)")->delimiter(',');
  an->add_option("--gaps", analyze.gaps, "Encounter max-gap list (s)")->delimiter(',');
  an->add_option("--alignment", analyze.alignment, "Window alignment")
      ->check(CLI::IsMember({"epoch", "device-first"}));
  an->add_option("--out", analyze.out, "Report file (default stdout)");
  an->add_option("--encounters-out", analyze.encounters_out, "Encounter table file");
  an->callback([&] { run = [&] { return run_analyze(analyze); }; });

  EncounterArgs encounters;
  auto* en = app.add_subcommand("encounters", "Encounter statistics for a sighting trace");
  en->add_option("--input", encounters.input, "Sighting trace (csv or tsv)")->required();
  en->add_option("--gaps", encounters.gaps, "Max-gap list (s)")->delimiter(',');
  en->add_option("--out", encounters.out, "Output file (default stdout)");
  en->callback([&] { run = [&] { return run_encounters(encounters); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ok) {
    return app.exit(ok);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    return run();
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitDomain;
  }
}
