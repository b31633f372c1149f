#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace jks {

// Worker count: hardware concurrency, capped by JKSCATTER_THREADS when set.
std::size_t worker_count();

// Evaluates f(0..count-1), possibly on several threads, and returns results by index.
// If any call throws, the exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t count, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::min(worker_count(), count);
  const auto run = [&](std::size_t first) {
    for (std::size_t i = first; i < count; i += workers) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace jks
