#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zarank::detail {

// Runs fn(chunk_index, begin, end) over contiguous chunks of [0, count).
// Callers must write to disjoint state per chunk (or merge in chunk index
// order) so results are independent of scheduling.
template <class Fn>
void parallel_chunks(std::uint64_t count, std::uint32_t workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    if (count > 0) fn(0u, std::uint64_t{0}, count);
    return;
  }
  if (workers > count) workers = static_cast<std::uint32_t>(count);
  const std::uint64_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (std::uint32_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    if (begin >= count) break;
    const std::uint64_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zarank::detail
