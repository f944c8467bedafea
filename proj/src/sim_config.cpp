#include "shardcast/sim_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "shardcast/error.hpp"

namespace shardcast::sim {

ScanMode ScanMode::continuous() { return {ScanKind::Continuous, Duration{1'000'000}, Duration{1'000'000}}; }
ScanMode ScanMode::balanced() { return {ScanKind::Balanced, Duration{2'000'000}, Duration{3'000'000}}; }
ScanMode ScanMode::low_power() { return {ScanKind::LowPower, Duration{500'000}, Duration{5'000'000}}; }

ScanMode ScanMode::custom(Duration window, Duration interval) {
  if (window.count() <= 0 || interval.count() <= 0 || window > interval) {
    throw Error(ErrorCode::InvalidConfig, "scan window must be in (0, interval]");
  }
  return {ScanKind::Custom, window, interval};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s) {
  s = trim(s);
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    auto pos = s.find(',');
    auto item = trim(s.substr(0, pos));
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
  return out;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error(ErrorCode::ParseError, "not a boolean: '" + std::string(s) + "'");
}

}  // namespace

ScanMode ScanMode::parse(std::string_view text) {
  text = trim(text);
  if (text == "continuous") return continuous();
  if (text == "balanced") return balanced();
  if (text == "low_power") return low_power();
  if (text.starts_with("custom:")) {
    auto rest = text.substr(7);
    auto slash = rest.find('/');
    if (slash == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "custom scan mode needs <window>/<interval>");
    }
    return custom(from_seconds(parse_double(rest.substr(0, slash))),
                  from_seconds(parse_double(rest.substr(slash + 1))));
  }
  throw Error(ErrorCode::ParseError, "unknown scan mode '" + std::string(text) + "'");
}

std::string ScanMode::name() const {
  switch (kind) {
    case ScanKind::Continuous: return "continuous";
    case ScanKind::Balanced: return "balanced";
    case ScanKind::LowPower: return "low_power";
    case ScanKind::Custom: {
      std::ostringstream os;
      os << "custom:" << to_seconds(window) << "/" << to_seconds(interval);
      return os.str();
    }
  }
  return "unknown";
}

double ScanMode::duty_cycle() const {
  return static_cast<double>(window.count()) / static_cast<double>(interval.count());
}

std::string_view to_string(Trigger trigger) noexcept {
  return trigger == Trigger::PerShare ? "per_share" : "per_epoch";
}

Duration SimConfig::horizon() const {
  if (horizon_s <= 0.0) return t_share() * params.n;
  return from_seconds(horizon_s);
}

void SimConfig::validate() const {
  params.validate();
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (m_devices < 1) fail("m_devices must be >= 1");
  if (scanners < 1) fail("scanners must be >= 1");
  if (!(loss_rate >= 0.0 && loss_rate < 1.0)) fail("loss_rate must be in [0, 1)");
  if (trials < 1) fail("trials must be >= 1");
  if (t_share().count() <= 0 || adv_interval().count() <= 0) fail("durations must be positive");
  if (horizon() < t_share() * params.n) fail("horizon must cover at least n * t_share");
}

std::vector<SimConfig> parse_sim_config(std::istream& in, bool* seed_specified) {
  if (seed_specified) *seed_specified = false;
  SimConfig base;
  std::vector<shamir::SchemeParams> schemes{base.params};
  std::vector<int> nodes{1};
  std::vector<double> losses{0.0};
  std::vector<ScanMode> modes{ScanMode::continuous()};

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    try {
      auto eq = view.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected key=value");
      const auto key = trim(view.substr(0, eq));
      const auto value = trim(view.substr(eq + 1));
      if (key == "k_n") {
        schemes.clear();
        for (auto item : split_list(value)) {
          auto colon = item.find(':');
          if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "k_n items are k:n");
          schemes.push_back({static_cast<int>(parse_int(item.substr(0, colon))),
                             static_cast<int>(parse_int(item.substr(colon + 1)))});
        }
      } else if (key == "nodes") {
        nodes.clear();
        for (auto item : split_list(value)) {
          auto dash = item.find('-');
          if (dash == std::string_view::npos) {
            nodes.push_back(static_cast<int>(parse_int(item)));
          } else {
            const auto lo = parse_int(item.substr(0, dash));
            const auto hi = parse_int(item.substr(dash + 1));
            if (hi < lo) throw Error(ErrorCode::ParseError, "empty node range");
            for (auto v = lo; v <= hi; ++v) nodes.push_back(static_cast<int>(v));
          }
        }
      } else if (key == "loss_rate") {
        losses.clear();
        for (auto item : split_list(value)) losses.push_back(parse_double(item));
      } else if (key == "scan_mode") {
        modes.clear();
        for (auto item : split_list(value)) modes.push_back(ScanMode::parse(item));
      } else if (key == "scanners") {
        base.scanners = static_cast<int>(parse_int(value));
      } else if (key == "t_share") {
        base.t_share_s = parse_double(value);
      } else if (key == "adv_interval") {
        base.adv_interval_s = parse_double(value);
      } else if (key == "horizon") {
        base.horizon_s = value == "auto" ? 0.0 : parse_double(value);
      } else if (key == "seed") {
        base.seed = static_cast<std::uint64_t>(parse_int(value));
        if (seed_specified) *seed_specified = true;
      } else if (key == "trials") {
        base.trials = static_cast<int>(parse_int(value));
      } else if (key == "trigger") {
        if (value == "per_share") base.trigger = Trigger::PerShare;
        else if (value == "per_epoch") base.trigger = Trigger::PerEpoch;
        else throw Error(ErrorCode::ParseError, "trigger is per_share or per_epoch");
      } else if (key == "max_tries") {
        base.max_tries = value == "auto" ? 0 : static_cast<std::uint64_t>(parse_int(value));
      } else if (key == "group_by_mac") {
        base.group_by_mac = parse_bool(value);
      } else {
        throw Error(ErrorCode::ParseError, "unknown key '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      if (e.line()) throw;
      throw Error(ErrorCode::ParseError, e.detail(), lineno);
    }
  }

  std::vector<SimConfig> out;
  for (const auto& scheme : schemes) {
    for (int m : nodes) {
      for (double loss : losses) {
        for (const auto& mode : modes) {
          SimConfig c = base;
          c.params = scheme;
          c.m_devices = m;
          c.loss_rate = loss;
          c.scan_mode = mode;
          c.validate();
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

std::vector<SimConfig> load_sim_config(const std::string& path, bool* seed_specified) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return parse_sim_config(in, seed_specified);
}

}  // namespace shardcast::sim
