#include "bcrk/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace bcrk {

int worker_count() {
  if (const char* env = std::getenv("BCRK_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n > 256 ? 256 : n;
    } catch (...) {
      // fall through to the hardware default
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int workers = worker_count();
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
    int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bcrk
