#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "hama/error.hpp"
#include "hama/worker_pool.hpp"

using hama::TaskGroup;
using hama::WorkerPool;

TEST_CASE("pool rejects zero workers") { CHECK_THROWS_AS(WorkerPool(0), hama::InvalidPlan); }

TEST_CASE("task group joins every spawned task") {
  for (std::size_t workers : {1u, 2u, 4u}) {
    WorkerPool pool(workers);
    std::atomic<int> sum{0};
    TaskGroup group(pool);
    for (int i = 1; i <= 100; ++i) group.spawn([&sum, i] { sum += i; });
    group.wait();
    CHECK(sum == 5050);
  }
}

namespace {

long fib(WorkerPool& pool, int n) {
  if (n < 2) return n;
  long a = 0;
  long b = 0;
  TaskGroup group(pool);
  group.spawn([&] { a = fib(pool, n - 1); });
  group.spawn([&] { b = fib(pool, n - 2); });
  group.wait();
  return a + b;
}

}  // namespace

TEST_CASE("nested groups do not deadlock") {
  WorkerPool pool(3);
  CHECK(fib(pool, 18) == 2584);
}

TEST_CASE("first spawned failure is rethrown") {
  WorkerPool pool(4);
  TaskGroup group(pool);
  std::atomic<int> ran{0};
  group.spawn([&] { ++ran; });
  group.spawn([] { throw std::runtime_error("first"); });
  group.spawn([] { throw std::logic_error("second"); });
  try {
    group.wait();
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "first");
  }
  CHECK(ran == 1);
}

TEST_CASE("environment caps the default worker count") {
  ::setenv("HAMA_MAX_WORKERS", "1", 1);
  CHECK(WorkerPool::default_workers() == 1);
  CHECK(WorkerPool::worker_cap() == 1u);
  ::setenv("HAMA_MAX_WORKERS", "junk", 1);
  CHECK_FALSE(WorkerPool::worker_cap().has_value());
  ::unsetenv("HAMA_MAX_WORKERS");
  CHECK(WorkerPool::default_workers() >= 1);
}
