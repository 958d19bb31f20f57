#include <doctest.h>

#include <atomic>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hama/patterns.hpp"
#include "oracles.hpp"

using namespace hama::patterns;

namespace {

auto plan(PatternKind kind, std::size_t workers = 1) { return PatternInvocation::of(kind, workers); }

const auto add = [](std::int64_t a, std::int64_t b) { return a + b; };

int centered_sum(std::span<const int> w) { return std::accumulate(w.begin(), w.end(), 0); }

}  // namespace

TEST_CASE("pattern kind names round-trip") {
  for (auto k : {PatternKind::map, PatternKind::reduce, PatternKind::map_reduce, PatternKind::stencil, PatternKind::farm})
    CHECK(parse_pattern_kind(to_string(k)) == k);
  CHECK(parse_pattern_kind("map-reduce") == PatternKind::map_reduce);
  CHECK_FALSE(parse_pattern_kind("scan").has_value());
}

TEST_CASE("plan validation") {
  auto p = plan(PatternKind::map);
  CHECK_NOTHROW(p.validate(PatternKind::map));
  CHECK_THROWS_AS(p.validate(PatternKind::reduce), hama::InvalidPlan);
  p.workers = 0;
  CHECK_THROWS_AS(p.validate(PatternKind::map), hama::InvalidPlan);
  p.workers = 2;
  p.chunk = 0;
  CHECK_THROWS_AS(p.validate(PatternKind::map), hama::InvalidPlan);
}

TEST_CASE("default chunk is a quarter share per worker") {
  auto p = plan(PatternKind::map, 4);
  CHECK(p.chunk_for(100) == 7);
  CHECK(p.chunk_for(16) == 1);
  CHECK(p.chunk_for(0) >= 1);
  p.chunk = 5;
  CHECK(p.chunk_for(100) == 5);
}

TEST_CASE("map examples") {
  const std::vector<int> xs{5, 1, 9};
  CHECK(map(xs, [](int x) { return x; }, plan(PatternKind::map)) == xs);
  const std::vector<int> ys{1, 2, 3};
  CHECK(map(ys, [](int x) { return x * x; }, plan(PatternKind::map, 2)) == std::vector<int>{1, 4, 9});
  CHECK(map(std::vector<int>{}, [](int x) { return x; }, plan(PatternKind::map, 3)).empty());
}

TEST_CASE("map propagates the elemental failure") {
  std::vector<int> xs(100);
  std::iota(xs.begin(), xs.end(), 0);
  auto bad = [](int x) {
    if (x == 37) throw std::domain_error("bad element");
    return x;
  };
  CHECK_THROWS_AS(map(xs, bad, plan(PatternKind::map, 4)), std::domain_error);
}

TEST_CASE("reduce examples") {
  const std::vector<std::int64_t> xs{1, 2, 3, 4};
  CHECK(reduce(xs, make_combiner<std::int64_t>(add, 0), plan(PatternKind::reduce)) == 10);
  CHECK(reduce(std::vector<std::int64_t>{}, make_combiner<std::int64_t>(add, 0), plan(PatternKind::reduce)) == 0);
  const auto max = make_combiner<std::int64_t>([](std::int64_t a, std::int64_t b) { return a > b ? a : b; },
                                               std::numeric_limits<std::int64_t>::min());
  CHECK(reduce(std::vector<std::int64_t>{7}, max, plan(PatternKind::reduce, 2)) == 7);
}

TEST_CASE("reduce of an empty range without identity is rejected") {
  const auto c = make_combiner_without_identity<std::int64_t>(add);
  CHECK_THROWS_AS(reduce(std::vector<std::int64_t>{}, c, plan(PatternKind::reduce)), hama::InvalidPlan);
  CHECK(reduce(std::vector<std::int64_t>{3, 4}, c, plan(PatternKind::reduce)) == 7);
}

TEST_CASE("combiner law checks") {
  const std::vector<std::int64_t> samples{-3, 0, 2, 9};
  CHECK(is_associative_on(make_combiner<std::int64_t>(add, 0), std::span<const std::int64_t>(samples)));
  CHECK(has_identity_on(make_combiner<std::int64_t>(add, 0), std::span<const std::int64_t>(samples)));
  const auto sub = make_combiner<std::int64_t>([](std::int64_t a, std::int64_t b) { return a - b; }, 0);
  CHECK_FALSE(is_associative_on(sub, std::span<const std::int64_t>(samples)));
  CHECK_FALSE(has_identity_on(make_combiner<std::int64_t>(add, 1), std::span<const std::int64_t>(samples)));
  CHECK_FALSE(has_identity_on(make_combiner_without_identity<std::int64_t>(add), std::span<const std::int64_t>(samples)));
}

TEST_CASE("reduce matches a sequential fold on random integers") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> xs(rng() % 3000);
    for (auto& x : xs) x = static_cast<std::int64_t>(rng() % 2001) - 1000;
    const std::int64_t expected = std::accumulate(xs.begin(), xs.end(), std::int64_t{0});
    for (std::size_t w : {1u, 3u}) CHECK(reduce(xs, make_combiner<std::int64_t>(add, 0), plan(PatternKind::reduce, w)) == expected);
  }
}

TEST_CASE("map_reduce examples") {
  using KV = KeyValue<std::string, std::int64_t>;
  auto identity = [](const KV& kv) { return std::vector<KV>{kv}; };
  const auto sum = make_combiner<std::int64_t>(add, 0);
  const std::vector<KV> in{{"a", 1}, {"b", 2}, {"a", 3}};
  CHECK(map_reduce(in, identity, sum, plan(PatternKind::map_reduce, 2)) == std::vector<KV>{{"a", 4}, {"b", 2}});
  CHECK(map_reduce(std::vector<KV>{}, identity, sum, plan(PatternKind::map_reduce)).empty());
  CHECK(map_reduce(std::vector<KV>{{"k", 5}}, identity, sum, plan(PatternKind::map_reduce)) == std::vector<KV>{{"k", 5}});
  CHECK_THROWS_AS(map_reduce(in, identity, make_combiner_without_identity<std::int64_t>(add), plan(PatternKind::map_reduce)),
                  hama::InvalidPlan);
}

TEST_CASE("map_reduce word count agrees with hash grouping") {
  using KV = KeyValue<int, std::int64_t>;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> docs(rng() % 400);
    for (auto& d : docs) d = static_cast<int>(rng() % 100000);
    // Each number emits one pair per decimal digit.
    auto mapper = [](const int& x) {
      std::vector<KV> out;
      int v = x;
      do {
        out.push_back({v % 10, 1});
        v /= 10;
      } while (v > 0);
      return out;
    };
    std::vector<std::pair<int, std::int64_t>> emitted;
    for (int d : docs)
      for (const auto& kv : mapper(d)) emitted.emplace_back(kv.key, kv.value);
    const auto expected = oracle::map_reduce(emitted, add, std::int64_t{0});
    const auto got = map_reduce(docs, mapper, make_combiner<std::int64_t>(add, 0), plan(PatternKind::map_reduce, 3));
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].key == expected[i].first);
      CHECK(got[i].value == expected[i].second);
    }
  }
}

TEST_CASE("stencil examples") {
  CHECK(stencil(std::vector<int>{1, 2, 3}, 1, centered_sum, plan(PatternKind::stencil)) == std::vector<int>{4, 6, 8});
  CHECK(stencil(std::vector<int>{9}, 1, centered_sum, plan(PatternKind::stencil)) == std::vector<int>{27});
  auto average = [](std::span<const double> w) { return std::accumulate(w.begin(), w.end(), 0.0) / w.size(); };
  const std::vector<double> flat(4, 2.5);
  CHECK(stencil(flat, 1, average, plan(PatternKind::stencil, 2)) == flat);
  CHECK(stencil(std::vector<int>{}, 2, centered_sum, plan(PatternKind::stencil)).empty());
}

TEST_CASE("stencil boundaries match window oracles") {
  std::mt19937_64 rng(5);
  auto sum = [](const std::vector<int>& w) { return std::accumulate(w.begin(), w.end(), 0); };
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> xs(1 + rng() % 200);
    for (auto& x : xs) x = static_cast<int>(rng() % 100);
    const int radius = 1 + static_cast<int>(rng() % 4);
    auto p = plan(PatternKind::stencil, 2);
    CHECK(stencil(xs, radius, centered_sum, p) == oracle::stencil_clamp(xs, radius, sum));
    p.boundary = Boundary::wrap;
    CHECK(stencil(xs, radius, centered_sum, p) == oracle::stencil_wrap(xs, radius, sum));
  }
}

TEST_CASE("stencil radius zero is rejected") {
  CHECK_THROWS_AS(stencil(std::vector<int>{1}, 0, centered_sum, plan(PatternKind::stencil)), hama::InvalidPlan);
}

TEST_CASE("farm examples") {
  const std::vector<int> none;
  CHECK(farm(stream_from(none), [](const int& x) { return x; }, plan(PatternKind::farm, 2)).empty());
  const std::vector<int> xs{4, 5, 6};
  for (std::size_t w : {1u, 3u})
    CHECK(farm(stream_from(xs), [](const int& x) { return x + 1; }, plan(PatternKind::farm, w)) == std::vector<int>{5, 6, 7});
}

TEST_CASE("farm keeps input order at any worker count") {
  std::vector<int> xs(10000);
  std::iota(xs.begin(), xs.end(), 0);
  auto fn = [](const int& x) { return static_cast<long>(x) * x % 1009; };
  const auto one = farm(stream_from(xs), fn, plan(PatternKind::farm, 1));
  const auto eight = farm(stream_from(xs), fn, plan(PatternKind::farm, 8));
  CHECK(one == eight);
  CHECK(one == oracle::map(xs, fn));
}

TEST_CASE("farm failure reports delivered prefix") {
  std::vector<int> xs(500);
  std::iota(xs.begin(), xs.end(), 0);
  auto fn = [](const int& x) {
    if (x == 123) throw std::runtime_error("boom");
    return x;
  };
  for (std::size_t w : {1u, 4u}) {
    std::vector<int> got;
    try {
      farm(stream_from(xs), fn, plan(PatternKind::farm, w), [&](int&& v) { got.push_back(v); });
      FAIL("expected PartialOutputError");
    } catch (const hama::PartialOutputError& e) {
      CHECK(e.completed() == 123);
      CHECK(got.size() == 123);
      CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
  }
}

TEST_CASE("farm producer failure") {
  int produced = 0;
  auto producer = [&]() -> std::optional<int> {
    if (produced == 10) throw std::runtime_error("source broke");
    return produced++;
  };
  try {
    farm(producer, [](const int& x) { return x; }, plan(PatternKind::farm, 2));
    FAIL("expected PartialOutputError");
  } catch (const hama::PartialOutputError& e) {
    CHECK(e.completed() == 10);
  }
}
