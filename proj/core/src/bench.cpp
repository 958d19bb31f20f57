#include "hama/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <random>
#include <thread>

#include "hama/error.hpp"

namespace hama::bench {

void BenchSpec::validate() const {
  if (count < 1) throw InvalidConfig("count must be at least 1");
  if (repetitions < 1) throw InvalidConfig("repetitions must be at least 1");
  if (workers < 1) throw InvalidConfig("workers must be at least 1");
  if (variants.empty()) throw InvalidConfig("at least one variant is required");
  if (coeff_bound < 0) throw InvalidConfig("coefficient bound must be non-negative");
  const auto terms = static_cast<unsigned __int128>(degree) + 1;
  const auto bound = static_cast<unsigned __int128>(coeff_bound);
  if (terms * bound * bound > static_cast<unsigned __int128>(INT64_MAX)) {
    throw InvalidConfig("degree and coefficient bound allow product coefficients beyond int64");
  }
  karatsuba_config().validate();
  const bool has_serial = std::find(variants.begin(), variants.end(), MultiplyVariant::serial) != variants.end();
  if (!has_serial && !serial_baseline_seconds) {
    throw InvalidConfig("the serial variant or a stored serial baseline is required for speedups");
  }
  if (serial_baseline_seconds && !(*serial_baseline_seconds > 0.0)) {
    throw InvalidConfig("serial baseline must be positive");
  }
}

KaratsubaConfig BenchSpec::karatsuba_config() const {
  KaratsubaConfig cfg;
  cfg.base_cutoff = base_cutoff;
  cfg.spawn_depth = spawn_depth;
  cfg.workers = workers;
  return cfg;
}

std::vector<PolynomialPair> generate_pairs(std::size_t count, std::size_t degree, std::int64_t bound,
                                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto span = static_cast<std::uint64_t>(bound) * 2 + 1;
  auto draw = [&] {
    std::vector<std::int64_t> coeffs(degree + 1);
    for (auto& c : coeffs) c = static_cast<std::int64_t>(gen() % span) - bound;
    return Polynomial(std::move(coeffs));
  };
  std::vector<PolynomialPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Polynomial p = draw();
    Polynomial q = draw();
    pairs.emplace_back(std::move(p), std::move(q));
  }
  return pairs;
}

std::string checksum(std::span<const Polynomial> products) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (word >> (8 * byte)) & 0xffU;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const auto& product : products) {
    const Polynomial norm = product.normalized();
    mix(norm.size());
    for (std::int64_t c : norm.coeffs()) mix(static_cast<std::uint64_t>(c));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

BenchReport run_bench(const BenchSpec& spec, const std::string& timestamp) {
  spec.validate();
  const auto pairs = generate_pairs(spec.count, spec.degree, spec.coeff_bound, spec.seed);
  const KaratsubaConfig cfg = spec.karatsuba_config();

  BenchReport report;
  report.degree = spec.degree;
  report.count = spec.count;
  report.seed = spec.seed;
  report.coeff_bound = spec.coeff_bound;
  report.repetitions = spec.repetitions;
  report.environment = {std::max(1u, std::thread::hardware_concurrency()), spec.workers, timestamp};

  for (MultiplyVariant variant : spec.variants) {
    VariantTiming timing;
    timing.variant = variant;
    std::string digest;
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
      BatchResult batch = multiply_batch(pairs, cfg, variant);
      timing.repetitions.push_back(batch.seconds);
      const std::string d = checksum(batch.products);
      if (!digest.empty() && d != digest) {
        throw CorrectnessFailure(std::string(to_string(variant)) + " is not deterministic across repetitions");
      }
      digest = d;
    }
    timing.seconds = *std::min_element(timing.repetitions.begin(), timing.repetitions.end());
    if (report.checksum.empty()) {
      report.checksum = digest;
    } else if (digest != report.checksum) {
      throw CorrectnessFailure("checksum mismatch: " + std::string(to_string(variant)) + " produced " + digest +
                               ", expected " + report.checksum);
    }
    report.variants.push_back(std::move(timing));
  }

  double serial_seconds = spec.serial_baseline_seconds.value_or(0.0);
  for (const auto& t : report.variants)
    if (t.variant == MultiplyVariant::serial) serial_seconds = t.seconds;
  for (auto& t : report.variants) {
    if (t.variant == MultiplyVariant::serial) {
      t.speedup = 1.0;
    } else if (t.seconds > 0.0) {
      t.speedup = serial_seconds / t.seconds;
    } else {
      t.speedup = serial_seconds > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
  }
  return report;
}

}  // namespace hama::bench
