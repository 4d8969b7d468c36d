#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "kernels/variants.hpp"
#include "zipfkit/error.hpp"
#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if ZIPFKIT_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* detect() noexcept {
  const char* env = std::getenv("ZIPFKIT_ISA");
  if (env != nullptr) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2") {
      if (const KernelTable* t = table_for(Isa::avx2)) return t;
    }
  }
  if (const KernelTable* t = table_for(Isa::avx2)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return scalar::table(); }

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &scalar::table();
    case Isa::avx2:
#if ZIPFKIT_HAVE_AVX2
      if (cpu_has_avx2()) return &avx2::table();
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* t = table_for(isa);
  if (t == nullptr) {
    throw ArgumentError("kernel variant '" + std::string(isa_name(isa)) +
                        "' is not available on this CPU/build");
  }
  current().store(t, std::memory_order_release);
}

void select_auto() noexcept { current().store(detect(), std::memory_order_release); }

}  // namespace zipfkit::kernels
