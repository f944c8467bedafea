#include <cstdlib>
#include <string>

#include "kernel_decls.hpp"
#include "shardcast/gf_kernels.hpp"

namespace shardcast::gf::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Ssse3: return "ssse3";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

namespace {

constexpr KernelSet kScalar{Isa::Scalar, &mul_acc_scalar, &scale_scalar};
#if defined(SHARDCAST_HAVE_X86_KERNELS)
constexpr KernelSet kSsse3{Isa::Ssse3, &mul_acc_ssse3, &scale_ssse3};
constexpr KernelSet kAvx2{Isa::Avx2, &mul_acc_avx2, &scale_avx2};
#endif
#if defined(SHARDCAST_HAVE_NEON_KERNELS)
constexpr KernelSet kNeon{Isa::Neon, &mul_acc_neon, &scale_neon};
#endif

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
#if defined(SHARDCAST_HAVE_X86_KERNELS)
    case Isa::Ssse3: return __builtin_cpu_supports("ssse3");
    case Isa::Avx2: return __builtin_cpu_supports("avx2");
#endif
#if defined(SHARDCAST_HAVE_NEON_KERNELS)
    case Isa::Neon: return true;  // mandatory on AArch64
#endif
    default: return false;
  }
}

const KernelSet* compiled(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return &kScalar;
#if defined(SHARDCAST_HAVE_X86_KERNELS)
    case Isa::Ssse3: return &kSsse3;
    case Isa::Avx2: return &kAvx2;
#endif
#if defined(SHARDCAST_HAVE_NEON_KERNELS)
    case Isa::Neon: return &kNeon;
#endif
    default: return nullptr;
  }
}

const KernelSet& choose() noexcept {
  if (const char* forced = std::getenv("SHARDCAST_FORCE_ISA")) {
    for (Isa isa : {Isa::Scalar, Isa::Ssse3, Isa::Avx2, Isa::Neon}) {
      if (to_string(isa) == forced) {
        if (const KernelSet* k = find(isa)) return *k;
      }
    }
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon, Isa::Ssse3}) {
    if (const KernelSet* k = find(isa)) return *k;
  }
  return kScalar;
}

}  // namespace

const KernelSet* find(Isa isa) noexcept {
  const KernelSet* k = compiled(isa);
  return (k != nullptr && cpu_supports(isa)) ? k : nullptr;
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Ssse3, Isa::Avx2, Isa::Neon}) {
    if (find(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

const KernelSet& active() noexcept {
  static const KernelSet& chosen = choose();
  return chosen;
}

}  // namespace shardcast::gf::kernels
