#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shardcast/broadcaster.hpp"
#include "shardcast/identity.hpp"
#include "shardcast/random.hpp"
#include "shardcast/shamir.hpp"
#include "shardcast/time.hpp"

namespace shardcast {

struct ReceivedShare {
  Share share;
  Timestamp received_at{};
  MacToken mac;
};

inline constexpr std::uint64_t kDefaultMaxTries = 100'000;

struct ReconstructorConfig {
  shamir::SchemeParams params;
  // Completed candidates tested per invocation before giving up.
  std::uint64_t max_tries = kDefaultMaxTries;
  // Only combine shares that arrived under the same MAC token.
  bool group_by_mac = false;
  // Shares (and dedupe records) older than this relative to the newest
  // arrival are dropped. Unset keeps everything.
  std::optional<Duration> eviction_age;
};

struct Recovery {
  DeviceIdentifier identifier;
  std::vector<ReceivedShare> shares;
  Timestamp recovered_at{};
  std::uint64_t tries = 0;  // tries spent in the invocation that succeeded
};

struct ReconstructionReport {
  std::uint64_t identifiers_recovered = 0;
  std::uint64_t total_tries = 0;
  std::uint64_t shares_consumed = 0;
  std::uint64_t shares_remaining = 0;
  std::uint64_t invocations = 0;
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t shares_evicted = 0;

  ReconstructionReport& operator+=(const ReconstructionReport& other);
};

// One newline-free JSON object, suitable for newline-delimited result files.
std::string to_record(const ReconstructionReport& report);

// Scanner-side simultaneous reconstruction. Received shares from any number
// of devices sit in one unlabeled working set; each invocation assembles
// random candidates of k shares with pairwise-distinct share ids and bodies,
// interpolates, and accepts the result only when its embedded CRC32 checks
// out. A success consumes the contributing shares and ends the invocation.
class Reconstructor {
 public:
  explicit Reconstructor(ReconstructorConfig config);

  // Deduplicates by (mac, share id, body), applies eviction, and adds the
  // share to the working set. Returns false for a repeat reception.
  bool ingest(const ReceivedShare& share);

  // One run of the search loop. Returns the recovery if one happened.
  std::optional<Recovery> reconstruct(Timestamp now, RandomSource& rng);

  // ingest() followed by reconstruct() when the share was new.
  std::vector<DeviceIdentifier> on_share_received(const ReceivedShare& share, RandomSource& rng);

  std::span<const ReceivedShare> working_set() const noexcept { return working_; }
  std::span<const std::size_t> candidate() const noexcept { return candidate_; }
  const std::vector<Recovery>& recovered() const noexcept { return recovered_; }
  const ReconstructorConfig& config() const noexcept { return config_; }
  ReconstructionReport report() const;

 private:
  struct DedupeKey {
    std::uint64_t mac;
    std::uint8_t id;
    ShareBody body;
    friend bool operator==(const DedupeKey&, const DedupeKey&) = default;
  };
  struct DedupeHash {
    std::size_t operator()(const DedupeKey& k) const noexcept;
  };

  bool eligible() const;
  void rebuild_groups();
  std::optional<std::size_t> draw(RandomSource& rng) const;
  bool accepts(std::size_t index) const;
  void evict_before(Timestamp cutoff);
  void remove_where(const std::vector<bool>& drop);
  void add_counts(const Share& s, int delta);

  ReconstructorConfig config_;
  std::vector<ReceivedShare> working_;
  std::vector<std::size_t> candidate_;
  std::array<std::uint32_t, 256> id_counts_{};
  int distinct_ids_ = 0;
  std::unordered_map<DedupeKey, Timestamp, DedupeHash> seen_;
  std::vector<Recovery> recovered_;
  ReconstructionReport stats_;

  // MAC grouping scratch, rebuilt per invocation.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> groups_;
  std::vector<std::size_t> group_eligible_;
};
// Search-space size for M devices:
// Search-space size for M devices as printed in the reference formula:
//   Q = sum_{j=0}^{M-1} (Mn - kj) / (Mn - kn) * (M - j)^(k-1)
// evaluated literally. Error(DivisionByZero) when Mn == kn (M == k).
double estimate_search_space(int m, const shamir::SchemeParams& params);

// All C(n, k) share-id subsets of size k, lexicographic.
std::vector<std::vector<std::uint8_t>> complementary_id_sets(const shamir::SchemeParams& params);

// 10 * ceil(sum_{m=1}^{M} m^(k-1)): ten times the expected tries for M
// complete share sets, ignoring leftover-share pollution.
std::uint64_t default_max_tries(int expected_devices, const shamir::SchemeParams& params);

}  // namespace shardcast
