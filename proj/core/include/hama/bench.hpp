#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hama/karatsuba.hpp"

namespace hama::bench {

struct BenchSpec {
  std::size_t degree = 10'000;
  std::size_t count = 256;
  std::vector<MultiplyVariant> variants{kAllVariants.begin(), kAllVariants.end()};
  std::size_t workers = 1;
  std::size_t repetitions = 3;
  std::uint64_t seed = 2019;
  /// Coefficients are drawn from [-coeff_bound, coeff_bound].
  std::int64_t coeff_bound = std::int64_t{1} << 20;
  std::size_t base_cutoff = 64;
  int spawn_depth = 4;
  /// Serial time to compare against when the serial variant is not run.
  std::optional<double> serial_baseline_seconds;

  /// Throws InvalidConfig. Rejects bounds where (degree + 1) * coeff_bound^2
  /// could exceed the int64 range of a product coefficient.
  void validate() const;
  KaratsubaConfig karatsuba_config() const;
};

struct VariantTiming {
  MultiplyVariant variant = MultiplyVariant::serial;
  /// Minimum over repetitions.
  double seconds = 0.0;
  double speedup = 1.0;
  std::vector<double> repetitions;

  friend bool operator==(const VariantTiming&, const VariantTiming&) = default;
};

struct BenchEnvironment {
  unsigned logical_cores = 1;
  std::size_t workers = 1;
  std::string timestamp;

  friend bool operator==(const BenchEnvironment&, const BenchEnvironment&) = default;
};

struct BenchReport {
  std::size_t degree = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::int64_t coeff_bound = 0;
  std::size_t repetitions = 0;
  std::vector<VariantTiming> variants;
  BenchEnvironment environment;
  /// Digest of every normalised product; identical for all variants.
  std::string checksum;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Deterministic input pairs. Coefficients come from std::mt19937_64 seeded with
/// `seed`, mapped as (u % (2*bound + 1)) - bound, p before q, pair by pair, so the
/// inputs are the same on every platform.
std::vector<PolynomialPair> generate_pairs(std::size_t count, std::size_t degree, std::int64_t bound,
                                           std::uint64_t seed);

/// FNV-1a (64-bit) over each normalised product's length and little-endian
/// coefficients, as 16 lowercase hex digits.
std::string checksum(std::span<const Polynomial> products);

/// Runs every requested variant on the same generated pairs. Throws
/// CorrectnessFailure if the variants' checksums disagree.
BenchReport run_bench(const BenchSpec& spec, const std::string& timestamp);

}  // namespace hama::bench
