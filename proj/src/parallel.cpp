#include "eqnoeth/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace eqnoeth {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EQNOETH_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return hw;
}

std::size_t chunk_count(std::size_t total, unsigned workers) {
  if (workers == 0) workers = worker_count();
  if (total == 0) return 0;
  return std::min<std::size_t>(workers, total);
}

void parallel_chunks(std::size_t total,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body,
                     unsigned workers) {
  std::size_t chunks = chunk_count(total, workers);
  if (chunks == 0) return;
  if (chunks == 1) {
    body(0, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(chunks);
  std::size_t step = (total + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t begin = c * step;
    std::size_t end = std::min(total, begin + step);
    pool.emplace_back([&, begin, end, c] {
      try {
        if (begin < end) body(begin, end, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace eqnoeth
