// Built with aggressive auto-vectorisation (see core/CMakeLists.txt). Loops are
// unit-stride, branch-free and alias-free so the compiler can emit SIMD code.
#include <algorithm>

#include "kernels.hpp"

namespace hama::detail {

namespace {

using u64 = std::uint64_t;

// Input-stationary form: out[i .. i+nb) += a[i] * b[0 .. nb), one axpy per row.
void convolve(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb, std::int64_t* out) {
  u64* __restrict o = reinterpret_cast<u64*>(out);
  const u64* __restrict ub = reinterpret_cast<const u64*>(b);
  std::fill(o, o + na + nb - 1, u64{0});
  for (std::size_t i = 0; i < na; ++i) {
    const u64 ai = static_cast<u64>(a[i]);
    u64* __restrict row = o + i;
    for (std::size_t j = 0; j < nb; ++j) row[j] += ai * ub[j];
  }
}

void accumulate(std::int64_t* dst, const std::int64_t* src, std::size_t n) {
  u64* __restrict d = reinterpret_cast<u64*>(dst);
  const u64* __restrict s = reinterpret_cast<const u64*>(src);
  for (std::size_t i = 0; i < n; ++i) d[i] += s[i];
}

void subtract(std::int64_t* dst, const std::int64_t* src, std::size_t n) {
  u64* __restrict d = reinterpret_cast<u64*>(dst);
  const u64* __restrict s = reinterpret_cast<const u64*>(src);
  for (std::size_t i = 0; i < n; ++i) d[i] -= s[i];
}

constexpr Kernels kSimd{convolve, accumulate, subtract};

}  // namespace

const Kernels& simd_kernels() noexcept { return kSimd; }

}  // namespace hama::detail
