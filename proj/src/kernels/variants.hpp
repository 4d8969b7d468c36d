#pragma once

#include "zipfkit/kernels/kernels.hpp"

namespace zipfkit::kernels {

namespace scalar {
const KernelTable& table() noexcept;
}

#if ZIPFKIT_HAVE_AVX2
namespace avx2 {
const KernelTable& table() noexcept;
}
#endif

}  // namespace zipfkit::kernels
