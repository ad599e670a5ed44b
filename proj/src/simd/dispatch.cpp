#include <atomic>
#include <string>

#include "kernel_tables.hpp"
#include "lsc/core/error.hpp"

namespace lsc::simd {
namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(LSC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend backend) noexcept {
  switch (backend) {
    case Backend::kScalar:
      return &scalar_kernels();
    case Backend::kAvx2:
#if defined(LSC_HAVE_AVX2_KERNELS)
      return cpu_has_avx2_fma() ? &detail::avx2_table() : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{table_for(best_available_backend())};
  return slot;
}

}  // namespace

bool backend_supported(Backend backend) noexcept { return table_for(backend) != nullptr; }

Backend best_available_backend() noexcept {
  return backend_supported(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

const KernelTable& kernels_for(Backend backend) {
  const KernelTable* table = table_for(backend);
  if (table == nullptr) {
    throw ConfigError("kernel backend '" + std::string(backend_name(backend)) +
                      "' is not available on this CPU/build");
  }
  return *table;
}

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_acquire); }

void set_backend(Backend backend) {
  active_slot().store(&kernels_for(backend), std::memory_order_release);
}

ScopedBackend::ScopedBackend(Backend backend) : previous_(active().backend) {
  set_backend(backend);
}

ScopedBackend::~ScopedBackend() { set_backend(previous_); }

}  // namespace lsc::simd
