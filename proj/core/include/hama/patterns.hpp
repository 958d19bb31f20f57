#pragma once

// Deterministic algorithmic skeletons: map, reduce, map-reduce, stencil, farm.
//
// Every pattern returns bit-identical results at any worker count provided the
// user functions are pure: they may read only their arguments and must be safe
// to call concurrently. Work is split into chunks; each chunk writes only its
// own output slots, and every combining order is a function of the input length
// alone.

#include <algorithm>
#include <concepts>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "hama/error.hpp"
#include "hama/worker_pool.hpp"

namespace hama::patterns {

enum class PatternKind { map, reduce, map_reduce, stencil, farm };

std::string_view to_string(PatternKind kind) noexcept;
std::optional<PatternKind> parse_pattern_kind(std::string_view name) noexcept;

/// Stencil neighbourhood resolution at the collection edges.
enum class Boundary { clamp, wrap };

std::string_view to_string(Boundary boundary) noexcept;

/// Execution plan for one pattern call.
struct PatternInvocation {
  PatternKind kind = PatternKind::map;
  std::size_t workers = 1;
  /// Elements per task. Unset means ceil(length / (4 * workers)).
  std::optional<std::size_t> chunk;
  Boundary boundary = Boundary::clamp;

  /// Throws InvalidPlan unless workers and chunk are positive and kind matches.
  void validate(PatternKind expected) const;

  std::size_t chunk_for(std::size_t length) const noexcept;

  static PatternInvocation of(PatternKind kind, std::size_t workers = 1) {
    PatternInvocation plan;
    plan.kind = kind;
    plan.workers = workers;
    return plan;
  }
};

/// Associative binary operation with an optional identity element.
template <class T, class Op>
struct Combiner {
  Op op;
  std::optional<T> identity;

  T operator()(const T& a, const T& b) const { return op(a, b); }
};

template <class T, class Op>
Combiner<T, std::decay_t<Op>> make_combiner(Op&& op, T identity) {
  return {std::forward<Op>(op), std::move(identity)};
}

template <class T, class Op>
Combiner<T, std::decay_t<Op>> make_combiner_without_identity(Op&& op) {
  return {std::forward<Op>(op), std::nullopt};
}

/// Checks (a+b)+c == a+(b+c) on every ordered triple drawn from `samples`.
template <class T, class Op>
bool is_associative_on(const Combiner<T, Op>& combine, std::span<const T> samples) {
  for (const T& a : samples)
    for (const T& b : samples)
      for (const T& c : samples)
        if (!(combine(combine(a, b), c) == combine(a, combine(b, c)))) return false;
  return true;
}

/// Checks identity+x == x == x+identity on every sample. False without an identity.
template <class T, class Op>
bool has_identity_on(const Combiner<T, Op>& combine, std::span<const T> samples) {
  if (!combine.identity) return false;
  for (const T& x : samples) {
    if (!(combine(*combine.identity, x) == x) || !(combine(x, *combine.identity) == x)) return false;
  }
  return true;
}

template <class K, class V>
struct KeyValue {
  K key;
  V value;

  friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

namespace detail {

template <std::ranges::contiguous_range Range>
auto as_span(const Range& r) {
  return std::span<const std::ranges::range_value_t<Range>>(std::ranges::data(r), std::ranges::size(r));
}

/// Runs body(begin, end) over consecutive chunks of [0, n).
template <class Body>
void for_each_chunk(WorkerPool& pool, std::size_t n, std::size_t chunk, Body&& body) {
  if (n == 0) return;
  if (pool.workers() == 1 || n <= chunk) {
    for (std::size_t begin = 0; begin < n; begin += chunk) body(begin, std::min(n, begin + chunk));
    return;
  }
  TaskGroup group(pool);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(n, begin + chunk);
    group.spawn([&body, begin, end] { body(begin, end); });
  }
  group.wait();
}

// Balanced tree over [lo, hi): left half gets floor((hi - lo) / 2) elements.
template <class T, class Op>
T tree_reduce_seq(std::span<const T> xs, std::size_t lo, std::size_t hi, const Combiner<T, Op>& combine) {
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  T left = tree_reduce_seq(xs, lo, mid, combine);
  T right = tree_reduce_seq(xs, mid, hi, combine);
  return combine(left, right);
}

template <class T, class Op>
T tree_reduce_par(WorkerPool& pool, std::span<const T> xs, std::size_t lo, std::size_t hi,
                  std::size_t grain, const Combiner<T, Op>& combine) {
  if (hi - lo <= grain || pool.workers() == 1) return tree_reduce_seq(xs, lo, hi, combine);
  const std::size_t mid = lo + (hi - lo) / 2;
  std::optional<T> left;
  TaskGroup group(pool);
  group.spawn([&] { left.emplace(tree_reduce_par(pool, xs, lo, mid, grain, combine)); });
  T right = tree_reduce_par(pool, xs, mid, hi, grain, combine);
  group.wait();
  return combine(*left, right);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// map

/// output[i] = fn(input[i]).
template <std::ranges::contiguous_range Range, class Fn>
auto map(WorkerPool& pool, const Range& input, Fn&& fn, const PatternInvocation& plan) {
  using T = std::ranges::range_value_t<Range>;
  using R = std::decay_t<std::invoke_result_t<Fn&, const T&>>;
  static_assert(std::is_default_constructible_v<R>, "map output type must be default constructible");
  plan.validate(PatternKind::map);
  const auto in = detail::as_span(input);
  std::vector<R> out(in.size());
  detail::for_each_chunk(pool, in.size(), plan.chunk_for(in.size()), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = fn(in[i]);
  });
  return out;
}

template <std::ranges::contiguous_range Range, class Fn>
auto map(const Range& input, Fn&& fn, const PatternInvocation& plan) {
  plan.validate(PatternKind::map);
  WorkerPool pool(plan.workers);
  return map(pool, input, std::forward<Fn>(fn), plan);
}

// ---------------------------------------------------------------------------
// reduce

/// X1 + X2 + ... + Xn over a balanced binary tree whose shape depends only on n.
/// Returns the identity for empty input.
template <std::ranges::contiguous_range Range, class Op>
auto reduce(WorkerPool& pool, const Range& input,
            const Combiner<std::ranges::range_value_t<Range>, Op>& combine, const PatternInvocation& plan) {
  using T = std::ranges::range_value_t<Range>;
  plan.validate(PatternKind::reduce);
  const auto in = detail::as_span(input);
  if (in.empty()) {
    if (!combine.identity) throw InvalidPlan("reduce of an empty collection needs an identity element");
    return T(*combine.identity);
  }
  return detail::tree_reduce_par(pool, in, 0, in.size(), plan.chunk_for(in.size()), combine);
}

template <std::ranges::contiguous_range Range, class Op>
auto reduce(const Range& input, const Combiner<std::ranges::range_value_t<Range>, Op>& combine,
            const PatternInvocation& plan) {
  plan.validate(PatternKind::reduce);
  WorkerPool pool(plan.workers);
  return reduce(pool, input, combine, plan);
}

// ---------------------------------------------------------------------------
// map-reduce

/// Maps every input pair to zero or more pairs, stable-sorts the emitted pairs by
/// key only, and reduces each key's values (in emission order) with `reducer`.
/// Output is sorted ascending by key.
template <std::ranges::contiguous_range Range, class Mapper, class Op, class V>
auto map_reduce(WorkerPool& pool, const Range& input, Mapper&& mapper, const Combiner<V, Op>& reducer,
                const PatternInvocation& plan) {
  using In = std::ranges::range_value_t<Range>;
  using Emitted = std::decay_t<std::invoke_result_t<Mapper&, const In&>>;
  using Pair = std::ranges::range_value_t<Emitted>;
  using K = decltype(std::declval<Pair>().key);
  static_assert(std::is_same_v<decltype(std::declval<Pair>().value), V>,
                "reducer must operate on the mapper's value type");

  plan.validate(PatternKind::map_reduce);
  if (!reducer.identity) throw InvalidPlan("map_reduce reducer needs an identity element");

  const auto in = detail::as_span(input);
  const std::size_t chunk = plan.chunk_for(in.size());

  std::vector<Emitted> emitted(in.size());
  detail::for_each_chunk(pool, in.size(), chunk, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) emitted[i] = mapper(in[i]);
  });

  std::vector<Pair> shuffled;
  for (auto& batch : emitted)
    for (auto& kv : batch) shuffled.push_back(std::move(kv));
  std::stable_sort(shuffled.begin(), shuffled.end(),
                   [](const Pair& a, const Pair& b) { return a.key < b.key; });

  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < shuffled.size();) {
    std::size_t j = i + 1;
    while (j < shuffled.size() && !(shuffled[i].key < shuffled[j].key)) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  std::vector<KeyValue<K, V>> out(groups.size());
  detail::for_each_chunk(pool, groups.size(), plan.chunk_for(groups.size()), [&](std::size_t b, std::size_t e) {
    std::vector<V> values;
    for (std::size_t g = b; g < e; ++g) {
      const auto [lo, hi] = groups[g];
      values.clear();
      for (std::size_t i = lo; i < hi; ++i) values.push_back(shuffled[i].value);
      out[g] = {shuffled[lo].key,
                detail::tree_reduce_seq(std::span<const V>(values), 0, values.size(), reducer)};
    }
  });
  return out;
}

template <std::ranges::contiguous_range Range, class Mapper, class Op, class V>
auto map_reduce(const Range& input, Mapper&& mapper, const Combiner<V, Op>& reducer,
                const PatternInvocation& plan) {
  plan.validate(PatternKind::map_reduce);
  WorkerPool pool(plan.workers);
  return map_reduce(pool, input, std::forward<Mapper>(mapper), reducer, plan);
}

// ---------------------------------------------------------------------------
// stencil

/// output[i] = fn(window), where window holds the 2*radius+1 elements centred on i,
/// resolved at the edges by plan.boundary.
template <std::ranges::contiguous_range Range, class Fn>
auto stencil(WorkerPool& pool, const Range& input, std::size_t radius, Fn&& fn, const PatternInvocation& plan) {
  using T = std::ranges::range_value_t<Range>;
  using R = std::decay_t<std::invoke_result_t<Fn&, std::span<const T>>>;
  plan.validate(PatternKind::stencil);
  if (radius == 0) throw InvalidPlan("stencil radius must be at least 1; use map for radius 0");

  const auto in = detail::as_span(input);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  const auto r = static_cast<std::ptrdiff_t>(radius);
  std::vector<R> out(in.size());

  detail::for_each_chunk(pool, in.size(), plan.chunk_for(in.size()), [&](std::size_t b, std::size_t e) {
    std::vector<T> window(2 * radius + 1);
    for (std::size_t i = b; i < e; ++i) {
      const auto centre = static_cast<std::ptrdiff_t>(i);
      for (std::ptrdiff_t d = -r; d <= r; ++d) {
        std::ptrdiff_t j = centre + d;
        if (plan.boundary == Boundary::clamp) {
          j = std::clamp<std::ptrdiff_t>(j, 0, n - 1);
        } else {
          j = ((j % n) + n) % n;
        }
        window[static_cast<std::size_t>(d + r)] = in[static_cast<std::size_t>(j)];
      }
      out[i] = fn(std::span<const T>(window));
    }
  });
  return out;
}

template <std::ranges::contiguous_range Range, class Fn>
auto stencil(const Range& input, std::size_t radius, Fn&& fn, const PatternInvocation& plan) {
  plan.validate(PatternKind::stencil);
  WorkerPool pool(plan.workers);
  return stencil(pool, input, radius, std::forward<Fn>(fn), plan);
}

// ---------------------------------------------------------------------------
// farm

/// Stream pattern. `produce()` returns std::optional<T>; std::nullopt ends the
/// stream. fn is applied to every element on plan.workers threads and results are
/// handed to `sink` one at a time, in input order. The producer and the sink are
/// only ever called from one thread at a time.
///
/// Returns the number of delivered elements. A throwing producer or elemental
/// function stops the stream and raises PartialOutputError carrying the number of
/// elements delivered before the failure.
template <class Producer, class Fn, class Sink>
std::size_t farm(Producer&& produce, Fn&& fn, const PatternInvocation& plan, Sink&& sink) {
  using Item = typename std::decay_t<std::invoke_result_t<Producer&>>::value_type;
  using R = std::decay_t<std::invoke_result_t<Fn&, const Item&>>;
  plan.validate(PatternKind::farm);

  auto describe = [](std::exception_ptr e) -> std::string {
    try {
      std::rethrow_exception(e);
    } catch (const std::exception& ex) {
      return ex.what();
    } catch (...) {
      return "unknown error";
    }
  };

  if (plan.workers == 1) {
    std::size_t delivered = 0;
    while (true) {
      std::optional<Item> item;
      try {
        item = produce();
      } catch (...) {
        throw PartialOutputError("farm producer failed: " + describe(std::current_exception()), delivered);
      }
      if (!item) return delivered;
      std::optional<R> result;
      try {
        result.emplace(fn(*item));
      } catch (...) {
        throw PartialOutputError("farm elemental function failed: " + describe(std::current_exception()),
                                 delivered);
      }
      sink(std::move(*result));
      ++delivered;
    }
  }

  const std::size_t capacity = 4 * plan.workers;
  std::mutex mutex;
  std::condition_variable items_cv;
  std::condition_variable space_cv;
  std::deque<std::pair<std::size_t, Item>> queue;
  std::map<std::size_t, R> finished;
  std::size_t next_to_deliver = 0;
  bool closed = false;
  bool aborted = false;
  std::exception_ptr failure;
  std::string failure_source;
  std::size_t failure_seq = static_cast<std::size_t>(-1);

  auto fail = [&](std::size_t seq, std::exception_ptr e, const char* source) {
    // Caller holds the lock. Keep the failure earliest in the stream.
    if (seq < failure_seq) {
      failure_seq = seq;
      failure = std::move(e);
      failure_source = source;
    }
    aborted = true;
    space_cv.notify_all();
  };

  auto worker = [&] {
    std::unique_lock lock(mutex);
    while (true) {
      items_cv.wait(lock, [&] { return !queue.empty() || closed; });
      if (queue.empty()) return;
      auto [seq, item] = std::move(queue.front());
      queue.pop_front();
      space_cv.notify_one();
      if (seq >= failure_seq) continue;
      lock.unlock();
      std::optional<R> result;
      std::exception_ptr error;
      try {
        result.emplace(fn(item));
      } catch (...) {
        error = std::current_exception();
      }
      lock.lock();
      if (error) {
        fail(seq, error, "elemental function");
        continue;
      }
      finished.emplace(seq, std::move(*result));
      while (!finished.empty() && finished.begin()->first == next_to_deliver && next_to_deliver < failure_seq) {
        auto node = finished.extract(finished.begin());
        try {
          sink(std::move(node.mapped()));
        } catch (...) {
          fail(next_to_deliver, std::current_exception(), "sink");
          break;
        }
        ++next_to_deliver;
      }
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(plan.workers);
    for (std::size_t i = 0; i < plan.workers; ++i) threads.emplace_back(worker);

    std::size_t seq = 0;
    while (true) {
      std::optional<Item> item;
      try {
        item = produce();
      } catch (...) {
        std::lock_guard lock(mutex);
        fail(seq, std::current_exception(), "producer");
        break;
      }
      if (!item) break;
      std::unique_lock lock(mutex);
      space_cv.wait(lock, [&] { return queue.size() < capacity || aborted; });
      if (aborted) break;
      queue.emplace_back(seq++, std::move(*item));
      items_cv.notify_one();
    }
    {
      std::lock_guard lock(mutex);
      closed = true;
    }
    items_cv.notify_all();
  }

  if (failure) {
    throw PartialOutputError("farm " + failure_source + " failed: " + describe(failure), next_to_deliver);
  }
  return next_to_deliver;
}

/// Collects the farm's ordered output into a vector.
template <class Producer, class Fn>
auto farm(Producer&& produce, Fn&& fn, const PatternInvocation& plan) {
  using Item = typename std::decay_t<std::invoke_result_t<Producer&>>::value_type;
  using R = std::decay_t<std::invoke_result_t<Fn&, const Item&>>;
  std::vector<R> out;
  farm(std::forward<Producer>(produce), std::forward<Fn>(fn), plan, [&out](R&& r) { out.push_back(std::move(r)); });
  return out;
}

/// Producer over a materialised range, for tests and benchmarks.
template <std::ranges::contiguous_range Range>
auto stream_from(const Range& items) {
  using T = std::ranges::range_value_t<Range>;
  return [span = detail::as_span(items), i = std::size_t{0}]() mutable -> std::optional<T> {
    if (i == span.size()) return std::nullopt;
    return span[i++];
  };
}

}  // namespace hama::patterns
