#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

// Arithmetic in GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x + 1.
namespace shardcast::gf {

inline constexpr std::uint16_t kReductionPolynomial = 0x11B;
// 0x03 generates the multiplicative group under 0x11B (0x02 does not).
inline constexpr std::uint8_t kGenerator = 0x03;

namespace detail {

// Shift-and-add multiply with reduction after every shift.
constexpr std::uint8_t mul_bitwise(std::uint8_t a, std::uint8_t b) noexcept {
  std::uint16_t acc = 0;
  std::uint16_t x = a;
  while (b != 0) {
    if (b & 1) acc ^= x;
    x <<= 1;
    if (x & 0x100) x ^= kReductionPolynomial;
    b >>= 1;
  }
  return static_cast<std::uint8_t>(acc);
}

struct Tables {
  // exp is doubled so that exp[log a + log b] never needs a modulo.
  std::array<std::uint8_t, 512> exp{};
  std::array<std::uint8_t, 256> log{};
  std::array<std::uint8_t, 256> inv{};
};

constexpr Tables make_tables() noexcept {
  Tables t;
  std::uint8_t x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = x;
    t.log[x] = static_cast<std::uint8_t>(i);
    x = mul_bitwise(x, kGenerator);
  }
  for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  for (int a = 1; a < 256; ++a) t.inv[a] = t.exp[255 - t.log[a]];
  return t;
}

inline constexpr Tables kTables = make_tables();

constexpr std::uint8_t mul_table(std::uint8_t a, std::uint8_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  return kTables.exp[kTables.log[a] + kTables.log[b]];
}

// Full 256x256 comparison of the table path against the bitwise path.
constexpr bool tables_match_bitwise() noexcept {
  for (int a = 0; a < 256; ++a) {
    for (int b = a; b < 256; ++b) {
      auto ua = static_cast<std::uint8_t>(a);
      auto ub = static_cast<std::uint8_t>(b);
      if (mul_table(ua, ub) != mul_bitwise(ua, ub)) return false;
    }
  }
  return true;
}

}  // namespace detail

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) noexcept {
  return static_cast<std::uint8_t>(a ^ b);
}

constexpr std::uint8_t sub(std::uint8_t a, std::uint8_t b) noexcept { return add(a, b); }

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept {
  return detail::mul_table(a, b);
}

// Throws Error(ZeroInverse) for a == 0.
std::uint8_t inv(std::uint8_t a);

// a / b; throws Error(ZeroInverse) for b == 0.
std::uint8_t div(std::uint8_t a, std::uint8_t b);

// Runtime re-check of the tables against the bitwise multiply. Returns true
// when all 65,536 products and 255 inverses agree.
bool self_test() noexcept;

// Region kernels. These dispatch to the best instruction set available on
// the running CPU (see gf_kernels.hpp).

// dst[i] ^= c * src[i]; requires dst.size() == src.size().
void mul_acc(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::uint8_t c);

// dst[i] = c * dst[i]
void scale(std::span<std::uint8_t> dst, std::uint8_t c);

}  // namespace shardcast::gf
