#include "shardcast/shamir.hpp"

#include <array>
#include <bitset>
#include <string>

#include "shardcast/error.hpp"
#include "shardcast/gf256.hpp"

namespace shardcast::shamir {

void SchemeParams::validate() const {
  if (k < 2 || n < k || n > 255) {
    throw Error(ErrorCode::InvalidParams,
                "need 2 <= k <= n <= 255, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
}

std::vector<SharePoints> split(std::span<const std::uint8_t> secret, const SchemeParams& params,
                               RandomSource& rng) {
  params.validate();
  if (secret.empty()) throw Error(ErrorCode::InvalidParams, "secret is empty");

  const std::size_t len = secret.size();
  // Row 0 holds the secret bytes (constant terms), rows 1..k-1 the random
  // coefficients a_1..a_{k-1} for every byte position.
  std::vector<std::vector<std::uint8_t>> coeffs(static_cast<std::size_t>(params.k),
                                                std::vector<std::uint8_t>(len));
  coeffs[0].assign(secret.begin(), secret.end());
  for (int j = 1; j < params.k; ++j) rng.fill(coeffs[static_cast<std::size_t>(j)]);

  std::vector<SharePoints> shares;
  shares.reserve(static_cast<std::size_t>(params.n));
  for (int x = 1; x <= params.n; ++x) {
    SharePoints s;
    s.id = static_cast<std::uint8_t>(x);
    s.body.assign(len, 0);
    // Horner: y = (((a_{k-1}) x + a_{k-2}) x + ...) x + s
    for (int j = params.k - 1; j >= 0; --j) {
      gf::scale(s.body, s.id);
      gf::mul_acc(s.body, coeffs[static_cast<std::size_t>(j)], 1);
    }
    shares.push_back(std::move(s));
  }
  return shares;
}

void lagrange_weights_at_zero(std::span<const std::uint8_t> ids, std::span<std::uint8_t> weights) {
  for (std::size_t l = 0; l < ids.size(); ++l) {
    std::uint8_t num = 1;
    std::uint8_t den = 1;
    for (std::size_t v = 0; v < ids.size(); ++v) {
      if (v == l) continue;
      // -x_v == x_v in characteristic 2.
      num = gf::mul(num, ids[v]);
      den = gf::mul(den, gf::sub(ids[l], ids[v]));
    }
    weights[l] = gf::div(num, den);
  }
}

void recover_into(std::span<const ShareView> shares, int k, std::span<std::uint8_t> out) {
  if (k < 2 || k > 255) throw Error(ErrorCode::InvalidParams, "threshold out of range");
  if (shares.size() != static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::WrongShareCount, "expected " + std::to_string(k) + " shares, got " +
                                                std::to_string(shares.size()));
  }
  std::bitset<256> seen;
  std::array<std::uint8_t, 255> ids{};
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const std::uint8_t id = shares[i].id;
    if (id == 0) throw Error(ErrorCode::BadShareId, "share id 0 is the secret's abscissa");
    if (seen.test(id)) {
      throw Error(ErrorCode::DuplicateShareId, "share id " + std::to_string(id) + " repeated");
    }
    seen.set(id);
    if (shares[i].body.size() != out.size()) {
      throw Error(ErrorCode::LengthMismatch, "share bodies differ in length");
    }
    ids[i] = id;
  }

  std::array<std::uint8_t, 255> weights{};
  lagrange_weights_at_zero(std::span(ids.data(), shares.size()),
                           std::span(weights.data(), shares.size()));
  std::fill(out.begin(), out.end(), std::uint8_t{0});
  for (std::size_t i = 0; i < shares.size(); ++i) {
    gf::mul_acc(out, shares[i].body, weights[i]);
  }
}

std::vector<std::uint8_t> recover(std::span<const SharePoints> shares, int k) {
  if (shares.empty()) throw Error(ErrorCode::WrongShareCount, "no shares supplied");
  std::vector<ShareView> views;
  views.reserve(shares.size());
  for (const auto& s : shares) views.push_back({s.id, s.body});
  std::vector<std::uint8_t> out(shares.front().body.size());
  recover_into(views, k, out);
  return out;
}

}  // namespace shardcast::shamir
