#include "shardcast/gf256.hpp"

#include "shardcast/error.hpp"
#include "shardcast/gf_kernels.hpp"

namespace shardcast::gf {

static_assert(detail::tables_match_bitwise(),
              "log/exp tables disagree with the bitwise multiply");
static_assert(detail::kTables.log[1] == 0 && detail::kTables.exp[255] == 1);

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "zero has no multiplicative inverse");
  return detail::kTables.inv[a];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) { return mul(a, inv(b)); }

bool self_test() noexcept {
  for (int a = 0; a < 256; ++a) {
    for (int b = 0; b < 256; ++b) {
      auto ua = static_cast<std::uint8_t>(a);
      auto ub = static_cast<std::uint8_t>(b);
      if (mul(ua, ub) != detail::mul_bitwise(ua, ub)) return false;
    }
    if (a != 0 && mul(static_cast<std::uint8_t>(a), detail::kTables.inv[a]) != 1) return false;
  }
  return true;
}

void mul_acc(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src, std::uint8_t c) {
  if (dst.size() != src.size()) {
    throw Error(ErrorCode::LengthMismatch, "mul_acc regions differ in length");
  }
  kernels::active().mul_acc(dst.data(), src.data(), dst.size(), c);
}

void scale(std::span<std::uint8_t> dst, std::uint8_t c) {
  kernels::active().scale(dst.data(), dst.size(), c);
}

}  // namespace shardcast::gf
