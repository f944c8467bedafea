#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shardcast/random.hpp"

// Byte-wise (k, n) threshold sharing over GF(2^8). Every byte of the secret
// gets its own random polynomial of degree k-1; the share id doubles as the
// evaluation point.
namespace shardcast::shamir {

struct SchemeParams {
  int k = 0;
  int n = 0;

  // 2 <= k <= n <= 255, otherwise Error(InvalidParams).
  void validate() const;
  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

struct SharePoints {
  std::uint8_t id = 0;
  std::vector<std::uint8_t> body;
  friend bool operator==(const SharePoints&, const SharePoints&) = default;
};

// Borrowed view of one share, used on the allocation-free recovery path.
struct ShareView {
  std::uint8_t id = 0;
  std::span<const std::uint8_t> body;
};

std::vector<SharePoints> split(std::span<const std::uint8_t> secret, const SchemeParams& params,
                               RandomSource& rng);

// Lagrange interpolation at x = 0. Exactly k shares with distinct nonzero ids
// and equal body lengths are required. Mixing shares from different splits is
// not an error: it yields some well-formed but meaningless byte string.
std::vector<std::uint8_t> recover(std::span<const SharePoints> shares, int k);

// Same as recover() but writes into out (out.size() must equal the body size)
// and performs no allocation.
void recover_into(std::span<const ShareView> shares, int k, std::span<std::uint8_t> out);

// Interpolation weights w_l = prod_{v != l} x_v / (x_l - x_v), so that
// f(0) = sum_l w_l * y_l. ids must be distinct and nonzero.
void lagrange_weights_at_zero(std::span<const std::uint8_t> ids, std::span<std::uint8_t> weights);

}  // namespace shardcast::shamir
