// AArch64 NEON variant: TBL split-nibble multiply, 16 bytes per step.
#include <arm_neon.h>

#include "kernel_decls.hpp"

namespace shardcast::gf::kernels {

namespace {

inline uint8x16_t mul16(uint8x16_t x, uint8x16_t lo_tbl, uint8x16_t hi_tbl, uint8x16_t mask) {
  const uint8x16_t lo = vandq_u8(x, mask);
  const uint8x16_t hi = vshrq_n_u8(x, 4);
  return veorq_u8(vqtbl1q_u8(lo_tbl, lo), vqtbl1q_u8(hi_tbl, hi));
}

}  // namespace

void mul_acc_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c) {
  if (c == 0) return;
  const std::uint8_t* table = nibble_table(c);
  const uint8x16_t lo_tbl = vld1q_u8(table);
  const uint8x16_t hi_tbl = vld1q_u8(table + 16);
  const uint8x16_t mask = vdupq_n_u8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    const uint8x16_t s = vld1q_u8(src + i);
    const uint8x16_t d = vld1q_u8(dst + i);
    vst1q_u8(dst + i, veorq_u8(d, mul16(s, lo_tbl, hi_tbl, mask)));
  }
  if (i < len) mul_acc_scalar(dst + i, src + i, len - i, c);
}

void scale_neon(std::uint8_t* dst, std::size_t len, std::uint8_t c) {
  if (c == 1) return;
  const std::uint8_t* table = nibble_table(c);
  const uint8x16_t lo_tbl = vld1q_u8(table);
  const uint8x16_t hi_tbl = vld1q_u8(table + 16);
  const uint8x16_t mask = vdupq_n_u8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    vst1q_u8(dst + i, mul16(vld1q_u8(dst + i), lo_tbl, hi_tbl, mask));
  }
  if (i < len) scale_scalar(dst + i, len - i, c);
}

}  // namespace shardcast::gf::kernels
