#include <array>

#include "kernel_decls.hpp"
#include "shardcast/gf256.hpp"

namespace shardcast::gf::kernels {

namespace {

using NibbleTables = std::array<std::array<std::uint8_t, 32>, 256>;

constexpr NibbleTables make_nibble_tables() noexcept {
  NibbleTables t{};
  for (int c = 0; c < 256; ++c) {
    for (int i = 0; i < 16; ++i) {
      t[c][i] = detail::mul_table(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(i));
      t[c][16 + i] =
          detail::mul_table(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(i << 4));
    }
  }
  return t;
}

alignas(32) constexpr NibbleTables kNibble = make_nibble_tables();

}  // namespace

const std::uint8_t* nibble_table(std::uint8_t c) noexcept { return kNibble[c].data(); }

void mul_acc_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c) {
  if (c == 0) return;
  if (c == 1) {
    for (std::size_t i = 0; i < len; ++i) dst[i] ^= src[i];
    return;
  }
  const std::uint8_t log_c = detail::kTables.log[c];
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t s = src[i];
    if (s != 0) dst[i] ^= detail::kTables.exp[log_c + detail::kTables.log[s]];
  }
}

void scale_scalar(std::uint8_t* dst, std::size_t len, std::uint8_t c) {
  if (c == 1) return;
  if (c == 0) {
    for (std::size_t i = 0; i < len; ++i) dst[i] = 0;
    return;
  }
  const std::uint8_t log_c = detail::kTables.log[c];
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t s = dst[i];
    dst[i] = s == 0 ? 0 : detail::kTables.exp[log_c + detail::kTables.log[s]];
  }
}

}  // namespace shardcast::gf::kernels
