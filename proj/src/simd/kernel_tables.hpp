#pragma once

#include "lsc/simd/kernels.hpp"

namespace lsc::simd::detail {

#if defined(LSC_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace lsc::simd::detail
