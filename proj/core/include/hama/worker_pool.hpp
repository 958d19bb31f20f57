#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace hama {

/// Fixed-size pool of worker threads shared by the parallel patterns.
///
/// A pool of `workers` executes tasks on `workers - 1` background threads plus
/// whichever thread is blocked in TaskGroup::wait(); waiting threads run queued
/// tasks instead of sleeping, so nested task groups cannot deadlock the pool.
/// With `workers == 1` no threads are started and every task runs inline.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t workers() const noexcept { return workers_; }

  /// Worker count honoring the HAMA_MAX_WORKERS environment cap; never below 1.
  static std::size_t default_workers();
  /// Positive value of HAMA_MAX_WORKERS, if set.
  static std::optional<std::size_t> worker_cap();

 private:
  friend class TaskGroup;

  void push(std::function<void()> task);
  void worker_loop(std::stop_token stop);

  std::size_t workers_;
  std::mutex mutex_;
  std::condition_variable_any cv_;
  std::deque<std::function<void()>> queue_;
  std::vector<std::jthread> threads_;
};

/// Fork-join scope over a WorkerPool. Every spawned task is joined by wait()
/// (or the destructor). When several tasks throw, wait() rethrows the exception
/// of the task spawned first, independent of which finished first.
class TaskGroup {
 public:
  explicit TaskGroup(WorkerPool& pool) : pool_(pool) {}
  ~TaskGroup();

  TaskGroup(const TaskGroup&) = delete;
  TaskGroup& operator=(const TaskGroup&) = delete;

  template <class F>
  void spawn(F&& task) {
    const std::size_t index = spawned_++;
    if (pool_.workers() == 1) {
      try {
        task();
      } catch (...) {
        record_failure(index, std::current_exception());
      }
      return;
    }
    {
      std::lock_guard lock(pool_.mutex_);
      ++pending_;
    }
    pool_.push([this, index, fn = std::forward<F>(task)]() mutable {
      try {
        fn();
      } catch (...) {
        record_failure(index, std::current_exception());
      }
      finish_one();
    });
  }

  void wait();

 private:
  void record_failure(std::size_t index, std::exception_ptr error);
  void finish_one();
  void join() noexcept;

  WorkerPool& pool_;
  std::size_t spawned_ = 0;
  std::size_t pending_ = 0;  // guarded by pool_.mutex_
  std::mutex error_mutex_;
  std::exception_ptr error_;
  std::size_t error_index_ = std::numeric_limits<std::size_t>::max();
};

}  // namespace hama
