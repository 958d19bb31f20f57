#include "hama/karatsuba.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <string>

#include "hama/error.hpp"
#include "hama/patterns.hpp"
#include "kernels.hpp"

namespace hama {

namespace {

using Coeffs = std::vector<std::int64_t>;
using CSpan = std::span<const std::int64_t>;
using MSpan = std::span<std::int64_t>;

class Multiplier {
 public:
  Multiplier(const detail::Kernels& kernels, std::size_t cutoff, int spawn_depth, WorkerPool* pool)
      : k_(kernels), cutoff_(cutoff), spawn_depth_(spawn_depth), pool_(pool) {}

  // out.size() == a.size() + b.size() - 1; out is overwritten.
  void multiply(CSpan a, CSpan b, MSpan out, int depth) const {
    const std::size_t la = a.size();
    const std::size_t lb = b.size();
    const std::size_t n = std::max(la, lb);
    if (n <= cutoff_) {
      k_.convolve(a.data(), la, b.data(), lb, out.data());
      return;
    }
    const std::size_t m = (n + 1) / 2;
    if (la <= m || lb <= m) {
      multiply_unbalanced(la >= lb ? a : b, la >= lb ? b : a, m, out, depth);
      return;
    }

    // a = a0 + x^m a1, b = b0 + x^m b1; a1 and b1 may be shorter than m.
    const CSpan a0 = a.first(m), a1 = a.subspan(m);
    const CSpan b0 = b.first(m), b1 = b.subspan(m);

    Coeffs low(2 * m - 1);
    Coeffs high(a1.size() + b1.size() - 1);
    Coeffs mid(2 * m - 1);
    Coeffs sum_a(a0.begin(), a0.end());
    Coeffs sum_b(b0.begin(), b0.end());
    k_.accumulate(sum_a.data(), a1.data(), a1.size());
    k_.accumulate(sum_b.data(), b1.data(), b1.size());

    run_three(
        [&] { multiply(a0, b0, low, depth + 1); },
        [&] { multiply(a1, b1, high, depth + 1); },
        [&] { multiply(sum_a, sum_b, mid, depth + 1); }, depth);

    k_.subtract(mid.data(), low.data(), low.size());
    k_.subtract(mid.data(), high.data(), high.size());

    std::fill(out.begin(), out.end(), 0);
    std::copy(low.begin(), low.end(), out.begin());
    std::copy(high.begin(), high.end(), out.begin() + static_cast<std::ptrdiff_t>(2 * m));
    // mid's true length is max(la, lb) - 1; entries past the end of out are zero.
    const std::size_t mid_len = std::min(mid.size(), out.size() - m);
    k_.accumulate(out.data() + m, mid.data(), mid_len);
  }

 private:
  // longer = l0 + x^m l1 while shorter has no high half: two products, no middle term.
  void multiply_unbalanced(CSpan longer, CSpan shorter, std::size_t m, MSpan out, int depth) const {
    const CSpan l0 = longer.first(m), l1 = longer.subspan(m);
    Coeffs low(l0.size() + shorter.size() - 1);
    Coeffs high(l1.size() + shorter.size() - 1);
    run_three(
        [&] { multiply(l0, shorter, low, depth + 1); },
        [&] { multiply(l1, shorter, high, depth + 1); }, [] {}, depth);
    std::fill(out.begin(), out.end(), 0);
    std::copy(low.begin(), low.end(), out.begin());
    k_.accumulate(out.data() + m, high.data(), high.size());
  }

  template <class A, class B, class C>
  void run_three(A&& first, B&& second, C&& third, int depth) const {
    if (pool_ == nullptr || pool_->workers() == 1 || depth >= spawn_depth_) {
      first();
      second();
      third();
      return;
    }
    TaskGroup group(*pool_);
    group.spawn(first);
    group.spawn(second);
    third();
    group.wait();
  }

  const detail::Kernels& k_;
  std::size_t cutoff_;
  int spawn_depth_;
  WorkerPool* pool_;
};

// Every result coefficient is bounded by min(len) * max|p| * max|q|.
bool product_provably_fits(const Polynomial& p, const Polynomial& q) {
  using i128 = __int128;
  auto mag = [](CSpan xs) {
    i128 best = 0;
    for (std::int64_t x : xs) best = std::max(best, x < 0 ? -static_cast<i128>(x) : static_cast<i128>(x));
    return best;
  };
  const i128 terms = static_cast<i128>(std::min(p.size(), q.size()));
  const i128 mp = mag(p.coeffs());
  const i128 mq = mag(q.coeffs());
  if (mp == 0 || mq == 0) return true;
  const i128 limit = std::numeric_limits<std::int64_t>::max();
  // mp, mq <= 2^63 and terms < 2^40: compare without overflowing 128 bits.
  if (mp > limit / mq) return false;
  return mp * mq <= limit / terms;
}

Polynomial multiply_impl(const Polynomial& p, const Polynomial& q, const KaratsubaConfig& cfg,
                         MultiplyVariant variant, WorkerPool* pool) {
  cfg.validate();
  if (cfg.checked && !product_provably_fits(p, q)) {
    // Overflow is possible; the checked oracle either proves the result exact or throws.
    return schoolbook_multiply(p, q);
  }
  const bool simd = variant == MultiplyVariant::vectorized || variant == MultiplyVariant::parallel_vectorized;
  const detail::Kernels& kernels = simd ? detail::simd_kernels() : detail::scalar_kernels();
  Multiplier mul(kernels, cfg.base_cutoff, cfg.spawn_depth, is_parallel(variant) ? pool : nullptr);
  Coeffs out(p.size() + q.size() - 1);
  mul.multiply(p.coeffs(), q.coeffs(), out, 0);
  return Polynomial(std::move(out));
}

std::string describe(const std::exception& e) { return e.what(); }

}  // namespace

std::string_view to_string(MultiplyVariant v) noexcept {
  switch (v) {
    case MultiplyVariant::serial: return "serial";
    case MultiplyVariant::vectorized: return "vectorized";
    case MultiplyVariant::parallel: return "parallel";
    case MultiplyVariant::parallel_vectorized: return "parallel_vectorized";
  }
  return "unknown";
}

std::optional<MultiplyVariant> parse_variant(std::string_view name) noexcept {
  for (MultiplyVariant v : kAllVariants)
    if (to_string(v) == name) return v;
  if (name == "parallel-vectorized") return MultiplyVariant::parallel_vectorized;
  return std::nullopt;
}

bool is_parallel(MultiplyVariant v) noexcept {
  return v == MultiplyVariant::parallel || v == MultiplyVariant::parallel_vectorized;
}

void KaratsubaConfig::validate() const {
  if (base_cutoff < 1) throw InvalidConfig("base_cutoff must be at least 1");
  if (spawn_depth < 0) throw InvalidConfig("spawn_depth must be non-negative");
  if (workers < 1) throw InvalidConfig("workers must be at least 1");
}

Polynomial schoolbook_multiply(const Polynomial& p, const Polynomial& q) {
  const auto a = p.coeffs();
  const auto b = q.coeffs();
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t term = 0;
      if (__builtin_mul_overflow(a[i], b[j], &term) || __builtin_add_overflow(out[i + j], term, &out[i + j])) {
        throw OverflowError("coefficient overflow at x^" + std::to_string(i + j));
      }
    }
  }
  return Polynomial(std::move(out));
}

Polynomial karatsuba_multiply(const Polynomial& p, const Polynomial& q, const KaratsubaConfig& cfg,
                              MultiplyVariant variant) {
  cfg.validate();
  if (is_parallel(variant) && cfg.workers > 1) {
    WorkerPool pool(cfg.workers);
    return multiply_impl(p, q, cfg, variant, &pool);
  }
  return multiply_impl(p, q, cfg, variant, nullptr);
}

Polynomial karatsuba_multiply(const Polynomial& p, const Polynomial& q, const KaratsubaConfig& cfg,
                              MultiplyVariant variant, WorkerPool& pool) {
  return multiply_impl(p, q, cfg, variant, &pool);
}

BatchResult multiply_batch(std::span<const PolynomialPair> pairs, const KaratsubaConfig& cfg,
                           MultiplyVariant variant) {
  if (pairs.empty()) throw InvalidRequest("multiply_batch needs at least one pair");
  cfg.validate();

  auto multiply_one = [&](const PolynomialPair& pair, WorkerPool* pool) {
    const auto index = static_cast<std::size_t>(&pair - pairs.data());
    try {
      return multiply_impl(pair.first, pair.second, cfg, variant, pool);
    } catch (const std::exception& e) {
      throw BatchError(describe(e), index);
    }
  };

  BatchResult result;
  const auto start = std::chrono::steady_clock::now();
  if (is_parallel(variant)) {
    WorkerPool pool(cfg.workers);
    const auto plan = patterns::PatternInvocation::of(patterns::PatternKind::map, cfg.workers);
    result.products = patterns::map(pool, pairs, [&](const PolynomialPair& pair) { return multiply_one(pair, &pool); }, plan);
  } else {
    result.products.reserve(pairs.size());
    for (const auto& pair : pairs) result.products.push_back(multiply_one(pair, nullptr));
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace hama
