#include "shardcast/reconstructor.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>

#include "shardcast/error.hpp"
#include "json.hpp"

namespace shardcast {

ReconstructionReport& ReconstructionReport::operator+=(const ReconstructionReport& o) {
  identifiers_recovered += o.identifiers_recovered;
  total_tries += o.total_tries;
  shares_consumed += o.shares_consumed;
  shares_remaining += o.shares_remaining;
  invocations += o.invocations;
  duplicates_dropped += o.duplicates_dropped;
  shares_evicted += o.shares_evicted;
  return *this;
}

std::string to_record(const ReconstructionReport& r) {
  nlohmann::ordered_json j;
  j["identifiers_recovered"] = r.identifiers_recovered;
  j["total_tries"] = r.total_tries;
  j["shares_consumed"] = r.shares_consumed;
  j["shares_remaining"] = r.shares_remaining;
  j["invocations"] = r.invocations;
  j["duplicates_dropped"] = r.duplicates_dropped;
  j["shares_evicted"] = r.shares_evicted;
  return j.dump();
}

std::size_t Reconstructor::DedupeHash::operator()(const DedupeKey& k) const noexcept {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::memcpy(&a, k.body.data(), 8);
  std::memcpy(&b, k.body.data() + 8, 8);
  std::uint64_t h = k.mac * 0x9E3779B97F4A7C15ULL;
  h ^= (a + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
  h ^= (b + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2));
  h ^= k.id;
  return static_cast<std::size_t>(h);
}

Reconstructor::Reconstructor(ReconstructorConfig config) : config_(std::move(config)) {
  config_.params.validate();
}

void Reconstructor::add_counts(const Share& s, int delta) {
  auto& c = id_counts_[s.share_id];
  if (delta > 0) {
    if (c++ == 0) ++distinct_ids_;
  } else {
    if (--c == 0) --distinct_ids_;
  }
}

void Reconstructor::remove_where(const std::vector<bool>& drop) {
  std::vector<std::size_t> remap(working_.size(), std::numeric_limits<std::size_t>::max());
  std::size_t out = 0;
  for (std::size_t i = 0; i < working_.size(); ++i) {
    if (drop[i]) {
      add_counts(working_[i].share, -1);
      continue;
    }
    remap[i] = out;
    if (out != i) working_[out] = working_[i];
    ++out;
  }
  working_.resize(out);
  bool broken = false;
  for (auto& idx : candidate_) {
    idx = remap[idx];
    if (idx == std::numeric_limits<std::size_t>::max()) broken = true;
  }
  if (broken) candidate_.clear();
}

void Reconstructor::evict_before(Timestamp cutoff) {
  std::vector<bool> drop(working_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < working_.size(); ++i) {
    if (working_[i].received_at < cutoff) drop[i] = any = true;
  }
  if (any) {
    const auto before = working_.size();
    remove_where(drop);
    stats_.shares_evicted += before - working_.size();
  }
  std::erase_if(seen_, [&](const auto& kv) { return kv.second < cutoff; });
}

bool Reconstructor::ingest(const ReceivedShare& share) {
  if (config_.eviction_age) evict_before(share.received_at - *config_.eviction_age);

  const DedupeKey key{share.mac.value, share.share.share_id, share.share.body};
  auto [it, inserted] = seen_.try_emplace(key, share.received_at);
  if (!inserted) {
    it->second = std::max(it->second, share.received_at);
    ++stats_.duplicates_dropped;
    return false;
  }
  working_.push_back(share);
  add_counts(share.share, +1);
  return true;
}

void Reconstructor::rebuild_groups() {
  groups_.clear();
  group_eligible_.clear();
  for (std::size_t i = 0; i < working_.size(); ++i) {
    groups_[working_[i].mac.value].push_back(i);
  }
  const auto k = static_cast<std::size_t>(config_.params.k);
  for (const auto& [mac, members] : groups_) {
    if (members.size() < k) continue;
    std::bitset<256> ids;
    for (std::size_t i : members) ids.set(working_[i].share.share_id);
    if (ids.count() >= k) {
      group_eligible_.insert(group_eligible_.end(), members.begin(), members.end());
    }
  }
  // unordered_map iteration order is not part of the contract; sort so that
  // draws depend only on the working set and the random stream.
  std::sort(group_eligible_.begin(), group_eligible_.end());
}

bool Reconstructor::eligible() const {
  const auto k = static_cast<std::size_t>(config_.params.k);
  if (config_.group_by_mac) return !group_eligible_.empty();
  return working_.size() >= k && distinct_ids_ >= config_.params.k;
}

std::optional<std::size_t> Reconstructor::draw(RandomSource& rng) const {
  if (!config_.group_by_mac) {
    return static_cast<std::size_t>(rng.uniform_below(working_.size()));
  }
  if (candidate_.empty()) {
    return group_eligible_[rng.uniform_below(group_eligible_.size())];
  }
  const auto& members = groups_.at(working_[candidate_.front()].mac.value);
  return members[rng.uniform_below(members.size())];
}

bool Reconstructor::accepts(std::size_t index) const {
  const Share& s = working_[index].share;
  for (std::size_t c : candidate_) {
    const Share& other = working_[c].share;
    if (other.share_id == s.share_id || other.body == s.body) return false;
  }
  return true;
}

std::optional<Recovery> Reconstructor::reconstruct(Timestamp now, RandomSource& rng) {
  ++stats_.invocations;
  if (config_.group_by_mac) rebuild_groups();

  const auto k = static_cast<std::size_t>(config_.params.k);
  const std::uint64_t reject_cap = 1000 * static_cast<std::uint64_t>(working_.size()) + 1000;
  std::uint64_t tries = 0;
  std::uint64_t rejects = 0;
  std::array<Share, 255> picked{};

  while (tries < config_.max_tries && eligible()) {
    if (candidate_.size() == k) {
      ++tries;
      ++stats_.total_tries;
      for (std::size_t i = 0; i < k; ++i) picked[i] = working_[candidate_[i]].share;
      const IdentifierBytes bytes = recover_identifier_bytes(std::span(picked.data(), k),
                                                             config_.params.k);
      if (verify_identifier(bytes)) {
        Recovery rec;
        rec.identifier = DeviceIdentifier::from_random_part(
            std::span<const std::uint8_t, kRandomPartSize>(bytes.data(), kRandomPartSize));
        rec.recovered_at = now;
        rec.tries = tries;
        std::vector<bool> drop(working_.size(), false);
        for (std::size_t c : candidate_) {
          rec.shares.push_back(working_[c]);
          drop[c] = true;
        }
        candidate_.clear();
        remove_where(drop);
        stats_.identifiers_recovered += 1;
        stats_.shares_consumed += k;
        recovered_.push_back(rec);
        return rec;
      }
      candidate_.clear();
      continue;
    }

    const auto index = draw(rng);
    if (index && accepts(*index)) {
      candidate_.push_back(*index);
      rejects = 0;
    } else if (++rejects > reject_cap) {
      // No acceptable share is reachable from this partial candidate.
      candidate_.clear();
      break;
    }
  }
  return std::nullopt;
}

std::vector<DeviceIdentifier> Reconstructor::on_share_received(const ReceivedShare& share,
                                                               RandomSource& rng) {
  std::vector<DeviceIdentifier> out;
  if (!ingest(share)) return out;
  if (auto rec = reconstruct(share.received_at, rng)) out.push_back(rec->identifier);
  return out;
}

ReconstructionReport Reconstructor::report() const {
  ReconstructionReport r = stats_;
  r.shares_remaining = working_.size();
  return r;
}

double estimate_search_space(int m, const shamir::SchemeParams& params) {
  params.validate();
  if (m < 1) throw Error(ErrorCode::InvalidParams, "device count must be at least 1");
  const double M = m;
  const double n = params.n;
  const double k = params.k;
  const double denom = M * n - k * n;
  if (denom == 0.0) throw Error(ErrorCode::DivisionByZero, "Mn - kn is zero (M == k)");
  double q = 0.0;
  for (int j = 0; j < m; ++j) {
    q += (M * n - k * j) / denom * std::pow(M - j, k - 1);
  }
  return q;
}

std::vector<std::vector<std::uint8_t>> complementary_id_sets(const shamir::SchemeParams& params) {
  params.validate();
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> current;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(current.size()) == params.k) {
      out.push_back(current);
      return;
    }
    const int need = params.k - static_cast<int>(current.size());
    for (int id = next; id <= params.n - need + 1; ++id) {
      current.push_back(static_cast<std::uint8_t>(id));
      rec(id + 1);
      current.pop_back();
    }
  };
  rec(1);
  return out;
}

std::uint64_t default_max_tries(int expected_devices, const shamir::SchemeParams& params) {
  params.validate();
  if (expected_devices < 1) return kDefaultMaxTries;
  double sum = 0.0;
  for (int m = 1; m <= expected_devices; ++m) sum += std::pow(m, params.k - 1);
  return 10 * static_cast<std::uint64_t>(std::ceil(sum));
}

}  // namespace shardcast
