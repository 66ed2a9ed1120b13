#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fsr {

/// Splits [0, count) into at most `jobs` contiguous blocks and runs fn(begin, end)
/// on each, one thread per block. Rethrows the first exception after joining.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(jobs, count));
  if (blocks == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(blocks);
  std::vector<std::thread> threads;
  threads.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = count * b / blocks, end = count * (b + 1) / blocks;
    threads.emplace_back([&, b, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fsr
