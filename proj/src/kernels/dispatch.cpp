#include <cstdlib>
#include <string_view>

#include "madelung/kernels.hpp"

namespace madelung::kernels {

#if defined(MADELUNG_HAS_AVX2)
extern const KernelTable kAvx2Table;
#endif

namespace {

bool cpu_has_avx2() {
#if defined(MADELUNG_HAS_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  const KernelTable* best = avx2();
  if (const char* env = std::getenv("MADELUNG_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return scalar();
    if (want == "avx2" && best) return *best;
  }
  return best ? *best : scalar();
}

}  // namespace

const KernelTable* avx2() {
#if defined(MADELUNG_HAS_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace madelung::kernels
