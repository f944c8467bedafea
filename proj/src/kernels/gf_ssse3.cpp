// Compiled with -mssse3. PSHUFB split-nibble multiply, 16 bytes per step.
#include <tmmintrin.h>

#include "kernel_decls.hpp"

namespace shardcast::gf::kernels {

namespace {

inline __m128i mul16(__m128i x, __m128i lo_tbl, __m128i hi_tbl, __m128i mask) {
  const __m128i lo = _mm_and_si128(x, mask);
  const __m128i hi = _mm_and_si128(_mm_srli_epi64(x, 4), mask);
  return _mm_xor_si128(_mm_shuffle_epi8(lo_tbl, lo), _mm_shuffle_epi8(hi_tbl, hi));
}

}  // namespace

void mul_acc_ssse3(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c) {
  if (c == 0) return;
  const std::uint8_t* table = nibble_table(c);
  const __m128i lo_tbl = _mm_loadu_si128(reinterpret_cast<const __m128i*>(table));
  const __m128i hi_tbl = _mm_loadu_si128(reinterpret_cast<const __m128i*>(table + 16));
  const __m128i mask = _mm_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    const __m128i s = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i));
    const __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i),
                     _mm_xor_si128(d, mul16(s, lo_tbl, hi_tbl, mask)));
  }
  if (i < len) mul_acc_scalar(dst + i, src + i, len - i, c);
}

void scale_ssse3(std::uint8_t* dst, std::size_t len, std::uint8_t c) {
  if (c == 1) return;
  const std::uint8_t* table = nibble_table(c);
  const __m128i lo_tbl = _mm_loadu_si128(reinterpret_cast<const __m128i*>(table));
  const __m128i hi_tbl = _mm_loadu_si128(reinterpret_cast<const __m128i*>(table + 16));
  const __m128i mask = _mm_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    const __m128i d = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), mul16(d, lo_tbl, hi_tbl, mask));
  }
  if (i < len) scale_scalar(dst + i, len - i, c);
}

}  // namespace shardcast::gf::kernels
