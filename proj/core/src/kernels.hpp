#pragma once

#include <cstddef>
#include <cstdint>

namespace hama::detail {

// Coefficient kernels used by the Karatsuba recursion. All arithmetic wraps
// modulo 2^64. The scalar and SIMD sets live in separate translation units
// compiled with different vectorisation flags.
struct Kernels {
  // out[0, na + nb - 1) = a * b
  void (*convolve)(const std::int64_t* a, std::size_t na, const std::int64_t* b, std::size_t nb,
                   std::int64_t* out);
  // dst[i] += src[i]
  void (*accumulate)(std::int64_t* dst, const std::int64_t* src, std::size_t n);
  // dst[i] -= src[i]
  void (*subtract)(std::int64_t* dst, const std::int64_t* src, std::size_t n);
};

const Kernels& scalar_kernels() noexcept;
const Kernels& simd_kernels() noexcept;

}  // namespace hama::detail
