#include "hama/worker_pool.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "hama/error.hpp"

namespace hama {

WorkerPool::WorkerPool(std::size_t workers) : workers_(workers) {
  if (workers == 0) throw InvalidPlan("worker count must be at least 1");
  threads_.reserve(workers - 1);
  for (std::size_t i = 1; i < workers; ++i) {
    threads_.emplace_back([this](std::stop_token stop) { worker_loop(stop); });
  }
}

WorkerPool::~WorkerPool() {
  for (auto& t : threads_) t.request_stop();
  cv_.notify_all();
  threads_.clear();
}

std::optional<std::size_t> WorkerPool::worker_cap() {
  const char* cap = std::getenv("HAMA_MAX_WORKERS");
  if (!cap) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(cap, cap + std::strlen(cap), value);
  if (ec != std::errc() || value == 0) return std::nullopt;
  return value;
}

std::size_t WorkerPool::default_workers() {
  const std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  return std::min(n, worker_cap().value_or(n));
}

void WorkerPool::push(std::function<void()> task) {
  {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(task));
  }
  cv_.notify_all();
}

void WorkerPool::worker_loop(std::stop_token stop) {
  std::unique_lock lock(mutex_);
  while (true) {
    if (!cv_.wait(lock, stop, [this] { return !queue_.empty(); })) return;
    auto task = std::move(queue_.front());
    queue_.pop_front();
    lock.unlock();
    task();
    lock.lock();
  }
}

TaskGroup::~TaskGroup() { join(); }

void TaskGroup::join() noexcept {
  if (pool_.workers() == 1) return;
  std::unique_lock lock(pool_.mutex_);
  while (pending_ > 0) {
    if (!pool_.queue_.empty()) {
      // Newest first: in divide-and-conquer this is usually our own subtask.
      auto task = std::move(pool_.queue_.back());
      pool_.queue_.pop_back();
      lock.unlock();
      task();
      lock.lock();
      continue;
    }
    pool_.cv_.wait(lock, [this] { return pending_ == 0 || !pool_.queue_.empty(); });
  }
}

void TaskGroup::wait() {
  join();
  std::exception_ptr error;
  {
    std::lock_guard lock(error_mutex_);
    error = std::exchange(error_, nullptr);
    error_index_ = std::numeric_limits<std::size_t>::max();
  }
  if (error) std::rethrow_exception(error);
}

void TaskGroup::record_failure(std::size_t index, std::exception_ptr error) {
  std::lock_guard lock(error_mutex_);
  if (index < error_index_) {
    error_index_ = index;
    error_ = std::move(error);
  }
}

void TaskGroup::finish_one() {
  // Notify while holding the lock: once it is released the group may be gone.
  std::lock_guard lock(pool_.mutex_);
  --pending_;
  pool_.cv_.notify_all();
}

}  // namespace hama
