#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hama/polynomial.hpp"
#include "hama/worker_pool.hpp"

namespace hama {

/// The four execution shapes of the benchmark. All produce identical products.
///   serial               scalar kernels, one thread
///   vectorized           branch-free contiguous kernels the compiler turns into SIMD
///   parallel             scalar kernels, batch map plus recursive task splitting
///   parallel_vectorized  both of the above
enum class MultiplyVariant { serial, vectorized, parallel, parallel_vectorized };

inline constexpr std::array<MultiplyVariant, 4> kAllVariants{
    MultiplyVariant::serial, MultiplyVariant::vectorized, MultiplyVariant::parallel,
    MultiplyVariant::parallel_vectorized};

std::string_view to_string(MultiplyVariant v) noexcept;
std::optional<MultiplyVariant> parse_variant(std::string_view name) noexcept;
bool is_parallel(MultiplyVariant v) noexcept;

struct KaratsubaConfig {
  /// Operands whose degree is below this are multiplied by schoolbook.
  std::size_t base_cutoff = 64;
  /// Recursion levels (from the top) whose three sub-products run as parallel tasks.
  int spawn_depth = 4;
  std::size_t workers = 1;
  /// Guarantee an exact result or OverflowError, at some cost.
  bool checked = false;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Reference convolution with overflow-checked arithmetic; throws OverflowError.
Polynomial schoolbook_multiply(const Polynomial& p, const Polynomial& q);

/// Karatsuba product. Bit-identical to schoolbook_multiply whenever every result
/// coefficient fits in int64; intermediates use wrapping 64-bit arithmetic, which is
/// exact modulo 2^64. With cfg.checked a possible overflow of the result is detected
/// and reported as OverflowError instead.
Polynomial karatsuba_multiply(const Polynomial& p, const Polynomial& q, const KaratsubaConfig& cfg,
                              MultiplyVariant variant);

/// Same, running parallel variants on an existing pool (cfg.workers is ignored).
Polynomial karatsuba_multiply(const Polynomial& p, const Polynomial& q, const KaratsubaConfig& cfg,
                              MultiplyVariant variant, WorkerPool& pool);

using PolynomialPair = std::pair<Polynomial, Polynomial>;

struct BatchResult {
  std::vector<Polynomial> products;
  double seconds = 0.0;
};

/// Multiplies every pair, timing the whole batch on a monotonic clock. Parallel
/// variants distribute the pairs with the map pattern. A failing pair is reported
/// as BatchError with its index (the lowest failing index when several fail).
BatchResult multiply_batch(std::span<const PolynomialPair> pairs, const KaratsubaConfig& cfg,
                           MultiplyVariant variant);

}  // namespace hama
