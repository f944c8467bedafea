#pragma once

// Declarations shared by the ISA-specific translation units. Those units are
// compiled with extra -m flags, so this header must stay free of standard
// library templates and inline functions.

#include <cstddef>
#include <cstdint>

namespace shardcast::gf::kernels {

const std::uint8_t* nibble_table(std::uint8_t c) noexcept;

void mul_acc_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_scalar(std::uint8_t* dst, std::size_t len, std::uint8_t c);

void mul_acc_ssse3(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_ssse3(std::uint8_t* dst, std::size_t len, std::uint8_t c);
void mul_acc_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_avx2(std::uint8_t* dst, std::size_t len, std::uint8_t c);
void mul_acc_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t len, std::uint8_t c);
void scale_neon(std::uint8_t* dst, std::size_t len, std::uint8_t c);

}  // namespace shardcast::gf::kernels
