#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace sinv {

/// Worker count for the searches that can be split. Results never depend on it.
struct Exec {
  unsigned jobs = 1;
};

/// Splits [0, count) into contiguous chunks, runs `body(lo, hi)` on each and
/// returns the partial results in chunk order. Callers fold the partials with
/// an order-independent (or chunk-ordered) reduction.
template <class Body>
auto run_chunks(std::uint64_t count, Exec exec, Body body) {
  using Partial = decltype(body(std::uint64_t{0}, std::uint64_t{0}));
  const std::uint64_t jobs = std::max<std::uint64_t>(1, std::min<std::uint64_t>(exec.jobs, count));
  std::vector<Partial> partials(jobs);
  if (jobs == 1) {
    partials[0] = body(0, count);
    return partials;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::uint64_t j = 0; j < jobs; ++j) {
    const std::uint64_t lo = count * j / jobs;
    const std::uint64_t hi = count * (j + 1) / jobs;
    pool.emplace_back([&, j, lo, hi] {
      try {
        partials[j] = body(lo, hi);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return partials;
}

}  // namespace sinv
