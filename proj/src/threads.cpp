#include "weylwig/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace weylwig {

int resolve_threads(int requested) {
  if (requested >= 1) return requested;
  if (const char* env = std::getenv("WEYLWIG_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // unparseable value falls through to the default
    }
  }
  return 1;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t t = static_cast<std::size_t>(threads < 1 ? 1 : threads);
  if (t <= 1 || n <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t nt = t < n ? t : n;
  const std::size_t chunk = (n + nt - 1) / nt;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const std::size_t lo = i * chunk;
    const std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

}  // namespace weylwig
