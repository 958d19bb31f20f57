#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "hama/error.hpp"
#include "hama/karatsuba.hpp"
#include "oracles.hpp"

using hama::KaratsubaConfig;
using hama::MultiplyVariant;
using hama::Polynomial;

namespace {

KaratsubaConfig config(std::size_t cutoff, std::size_t workers = 1) {
  KaratsubaConfig cfg;
  cfg.base_cutoff = cutoff;
  cfg.workers = workers;
  return cfg;
}

}  // namespace

TEST_CASE("polynomial basics") {
  CHECK(Polynomial(std::vector<std::int64_t>{}).size() == 1);
  CHECK(Polynomial{}.is_zero());
  CHECK(Polynomial{1, 2, 0, 0}.normalized() == Polynomial{1, 2});
  CHECK(Polynomial{0, 0}.normalized() == Polynomial{0});
  CHECK(hama::equivalent(Polynomial{3, 0}, Polynomial{3}));
  CHECK_FALSE(Polynomial{3, 0} == Polynomial{3});
  CHECK(Polynomial{4, 5, 6}.degree() == 2);
}

TEST_CASE("variant names round-trip") {
  for (auto v : hama::kAllVariants) CHECK(hama::parse_variant(hama::to_string(v)) == v);
  CHECK_FALSE(hama::parse_variant("gpu").has_value());
  CHECK(hama::is_parallel(MultiplyVariant::parallel_vectorized));
  CHECK_FALSE(hama::is_parallel(MultiplyVariant::vectorized));
}

TEST_CASE("schoolbook examples") {
  const Polynomial q{3, -1, 4};
  const auto zero = hama::schoolbook_multiply(Polynomial{0}, q);
  CHECK(zero.size() == 3);
  CHECK(zero.normalized() == Polynomial{0});
  CHECK(hama::schoolbook_multiply(Polynomial{1}, q) == q);
  CHECK(hama::schoolbook_multiply(Polynomial{1, 2}, Polynomial{3, 4}) == Polynomial{3, 10, 8});
}

TEST_CASE("schoolbook detects overflow") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
  CHECK_THROWS_AS(hama::schoolbook_multiply(Polynomial{big}, Polynomial{2}), hama::OverflowError);
  CHECK_THROWS_AS(hama::schoolbook_multiply(Polynomial{big, big}, Polynomial{1, 1}), hama::OverflowError);
}

TEST_CASE("karatsuba small examples in every variant") {
  for (auto v : hama::kAllVariants) {
    for (std::size_t cutoff : {1u, 2u, 64u}) {
      const auto cfg = config(cutoff, 2);
      CHECK(hama::karatsuba_multiply(Polynomial{7}, Polynomial{6}, cfg, v) == Polynomial{42});
      CHECK(hama::karatsuba_multiply(Polynomial{1, 2}, Polynomial{3, 4}, cfg, v) == Polynomial{3, 10, 8});
      CHECK(hama::karatsuba_multiply(Polynomial{0}, Polynomial{1, 2, 3}, cfg, v) == Polynomial{0, 0, 0});
    }
  }
}

TEST_CASE("identity product at degree 10000") {
  std::mt19937_64 rng(3);
  const auto p = oracle::random_poly(rng, 10000, 1 << 20);
  for (auto v : hama::kAllVariants) CHECK(hama::karatsuba_multiply(p, Polynomial{1}, config(64, 2), v) == p);
}

TEST_CASE("karatsuba matches the 128-bit oracle on unbalanced operands") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = oracle::random_poly(rng, rng() % 300, 1 << 20);
    const auto q = oracle::random_poly(rng, rng() % 40, 1 << 20);
    const auto expected = oracle::multiply(p, q);
    for (auto v : hama::kAllVariants) {
      for (std::size_t cutoff : {1u, 3u, 16u}) {
        CHECK(hama::karatsuba_multiply(p, q, config(cutoff, 3), v) == expected);
        CHECK(hama::karatsuba_multiply(q, p, config(cutoff, 3), v) == expected);
      }
    }
  }
}

TEST_CASE("wrapping intermediates stay exact near the int64 edge") {
  // Final coefficients fit int64 but the middle term (p0+p1)(q0+q1) does not.
  const std::int64_t a = 3'000'000'000;
  const Polynomial p{a, a};
  const Polynomial q{a, -a};
  const auto expected = oracle::multiply(p, q);
  for (auto v : hama::kAllVariants) CHECK(hama::karatsuba_multiply(p, q, config(1), v) == expected);
}

TEST_CASE("checked mode reports true overflow") {
  const std::int64_t big = std::int64_t{1} << 40;
  const Polynomial p(std::vector<std::int64_t>(200, big));
  auto cfg = config(8);
  cfg.checked = true;
  CHECK_THROWS_AS(hama::karatsuba_multiply(p, p, cfg, MultiplyVariant::serial), hama::OverflowError);
  const Polynomial small{1, 2, 3};
  CHECK(hama::karatsuba_multiply(small, small, cfg, MultiplyVariant::parallel) == Polynomial{1, 4, 10, 12, 9});
}

TEST_CASE("config validation") {
  auto cfg = config(0);
  CHECK_THROWS_AS(cfg.validate(), hama::InvalidConfig);
  cfg = config(4, 0);
  CHECK_THROWS_AS(cfg.validate(), hama::InvalidConfig);
  cfg = config(4);
  cfg.spawn_depth = -1;
  CHECK_THROWS_AS(cfg.validate(), hama::InvalidConfig);
}

TEST_CASE("batch examples") {
  const std::vector<hama::PolynomialPair> one{{Polynomial{1, 2}, Polynomial{3, 4}}};
  for (auto v : hama::kAllVariants) {
    const auto r = hama::multiply_batch(one, config(64, 2), v);
    REQUIRE(r.products.size() == 1);
    CHECK(r.products[0] == Polynomial{3, 10, 8});
    CHECK(r.seconds >= 0.0);
  }
  const std::vector<hama::PolynomialPair> ones(8, {Polynomial{1}, Polynomial{1}});
  const auto r = hama::multiply_batch(ones, config(64, 3), MultiplyVariant::parallel);
  CHECK(r.products == std::vector<Polynomial>(8, Polynomial{1}));
  CHECK_THROWS_AS(hama::multiply_batch({}, config(64), MultiplyVariant::serial), hama::InvalidRequest);
}

TEST_CASE("batch failure names the pair") {
  const std::int64_t big = std::int64_t{1} << 40;
  const Polynomial huge(std::vector<std::int64_t>(100, big));
  std::vector<hama::PolynomialPair> pairs(5, {Polynomial{1}, Polynomial{2}});
  pairs[3] = {huge, huge};
  auto cfg = config(8, 2);
  cfg.checked = true;
  try {
    hama::multiply_batch(pairs, cfg, MultiplyVariant::parallel);
    FAIL("expected BatchError");
  } catch (const hama::BatchError& e) {
    CHECK(e.index() == 3);
  }
}
