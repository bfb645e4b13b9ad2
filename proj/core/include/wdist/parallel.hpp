#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wdist {

/// Runs `body(state, task)` for every task in [0, task_count) on `threads`
/// workers. Each worker owns a state built by `make_state()`; the states are
/// returned so the caller can reduce them. Task-to-worker assignment is
/// dynamic, so reductions must be commutative to stay deterministic.
template <class MakeState, class Body>
auto parallel_tasks(std::size_t task_count, unsigned threads, MakeState make_state, Body body)
    -> std::vector<decltype(make_state())> {
  using State = decltype(make_state());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(task_count, 1))));
  std::vector<State> states;
  states.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) states.push_back(make_state());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&](State& state) {
    try {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        std::size_t task = next.fetch_add(1, std::memory_order_relaxed);
        if (task >= task_count) return;
        body(state, task);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (threads == 1) {
    worker(states[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, std::ref(states[i]));
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return states;
}

}  // namespace wdist
