#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

// Instruction-set specific GF(2^8) region kernels. The scalar variant is the
// reference; every other variant must produce byte-identical output.
namespace shardcast::gf::kernels {

enum class Isa { Scalar, Ssse3, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

using MulAccFn = void (*)(std::uint8_t* dst, const std::uint8_t* src, std::size_t len,
                          std::uint8_t c);
using ScaleFn = void (*)(std::uint8_t* dst, std::size_t len, std::uint8_t c);

struct KernelSet {
  Isa isa;
  MulAccFn mul_acc;
  ScaleFn scale;
};

// Variants compiled in and supported by the running CPU, scalar first.
std::vector<Isa> available();

// nullptr when the variant is not compiled in or not supported here.
const KernelSet* find(Isa isa) noexcept;

// The variant chosen for this process. Honors SHARDCAST_FORCE_ISA
// (scalar|ssse3|avx2|neon) when that variant is available.
const KernelSet& active() noexcept;

// Split-nibble product table for c: bytes [0,16) hold c*i and bytes [16,32)
// hold c*(i<<4). Shared by the shuffle-based variants; 32-byte aligned.
const std::uint8_t* nibble_table(std::uint8_t c) noexcept;

void mul_acc_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_scalar(std::uint8_t* dst, std::size_t len, std::uint8_t c);

#if defined(SHARDCAST_HAVE_X86_KERNELS)
void mul_acc_ssse3(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_ssse3(std::uint8_t* dst, std::size_t len, std::uint8_t c);
void mul_acc_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_avx2(std::uint8_t* dst, std::size_t len, std::uint8_t c);
#endif
#if defined(SHARDCAST_HAVE_NEON_KERNELS)
void mul_acc_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_neon(std::uint8_t* dst, std::size_t len, std::uint8_t c);
#endif

}  // namespace shardcast::gf::kernels
