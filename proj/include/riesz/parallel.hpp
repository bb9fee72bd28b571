#pragma once

// Deterministic parallel loops and reductions.
//
// Work is cut into fixed index blocks independent of the thread count, and
// reductions combine block results along a fixed pairwise tree, so results
// are bit-identical for any number of threads.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace riesz {

// Process-wide cap on worker threads; 0 means hardware concurrency.
void set_thread_limit(unsigned threads);
unsigned thread_limit();

// Runs body(block_index, begin, end) over [0, n) in blocks of `block` items.
void parallel_blocks(std::size_t n, std::size_t block,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// Pairwise summation of values in index order.
template <class T>
T pairwise_sum(const std::vector<T>& values, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return T{};
  if (hi - lo <= 8) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += values[i];
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(values, lo, mid) + pairwise_sum(values, mid, hi);
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(values, 0, values.size());
}

// Sum of f(i) for i in [0, n) with a fixed reduction tree.
template <class T, class F>
T deterministic_sum(std::size_t n, F&& f, std::size_t block = 4096) {
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<T> partial(blocks);
  parallel_blocks(n, block, [&](std::size_t b, std::size_t begin, std::size_t end) {
    std::vector<T> local;
    local.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) local.push_back(f(i));
    partial[b] = pairwise_sum(local);
  });
  return pairwise_sum(partial);
}

}  // namespace riesz
