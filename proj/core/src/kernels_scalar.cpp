// Built with auto-vectorisation disabled (see core/CMakeLists.txt).
#include <algorithm>

#include "kernels.hpp"

namespace hama::detail {

namespace {

using u64 = std::uint64_t;

// Output-stationary convolution: each coefficient is one scalar dot product
// with data-dependent bounds.
void convolve(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb, std::int64_t* out) {
  const std::size_t n = na + nb - 1;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k >= nb ? k - nb + 1 : 0;
    const std::size_t hi = std::min(k, na - 1);
    u64 sum = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      sum += static_cast<u64>(a[i]) * static_cast<u64>(b[k - i]);
    }
    out[k] = static_cast<std::int64_t>(sum);
  }
}

void accumulate(std::int64_t* dst, const std::int64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::int64_t>(static_cast<u64>(dst[i]) + static_cast<u64>(src[i]));
}

void subtract(std::int64_t* dst, const std::int64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = static_cast<std::int64_t>(static_cast<u64>(dst[i]) - static_cast<u64>(src[i]));
}

constexpr Kernels kScalar{convolve, accumulate, subtract};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace hama::detail
