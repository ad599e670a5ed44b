#pragma once

// Data-parallel inner loops used by the tensor core.
//
// Every kernel has a portable scalar reference implementation. When the
// library is built with LSC_ENABLE_AVX2 and the CPU reports AVX2+FMA, an
// intrinsics variant is selected at startup. Elementwise kernels produce
// bitwise-identical results on both backends; reductions (dot,
// squared_distance) and axpy (fused multiply-add) may differ in the last
// few ulps. A run is only bit-reproducible on the same backend.

#include <cstddef>
#include <string_view>

namespace lsc::simd {

enum class Backend { kScalar, kAvx2 };

struct AdamCoefficients {
  double lr;
  double beta1;
  double beta2;
  double epsilon;
  double bias_correction1;  // 1 - beta1^t
  double bias_correction2;  // 1 - beta2^t
};

struct KernelTable {
  Backend backend;
  const char* name;

  // y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, double alpha, const double* x, double* y);
  double (*dot)(std::size_t n, const double* x, const double* y);
  // out[i] = a[i] + b[i]; out may alias a or b.
  void (*add)(std::size_t n, const double* a, const double* b, double* out);
  // out[i] = a[i] * b[i]
  void (*mul)(std::size_t n, const double* a, const double* b, double* out);
  // out[i] = alpha * x[i]
  void (*scale)(std::size_t n, double alpha, const double* x, double* out);
  // sum_i (a[i] - b[i])^2
  double (*squared_distance)(std::size_t n, const double* a, const double* b);
  // One bias-corrected Adam update over a flat parameter buffer.
  void (*adam_update)(std::size_t n, const AdamCoefficients& c, const double* grad, double* m,
                      double* v, double* param);
};

const KernelTable& scalar_kernels() noexcept;

bool backend_supported(Backend backend) noexcept;
Backend best_available_backend() noexcept;
std::string_view backend_name(Backend backend) noexcept;

// Kernel table for `backend`; throws lsc::ConfigError when unsupported.
const KernelTable& kernels_for(Backend backend);

// Currently selected table. Defaults to best_available_backend().
const KernelTable& active() noexcept;

// Switch the process-wide backend; throws lsc::ConfigError when unsupported.
void set_backend(Backend backend);

// Restores the previous backend on destruction. Used by equivalence tests.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend backend);
  ~ScopedBackend();
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

}  // namespace lsc::simd
