#ifndef WEYLWIG_THREADS_HPP
#define WEYLWIG_THREADS_HPP

#include <cstddef>
#include <functional>

namespace weylwig {

// Thread count resolution: explicit argument > WEYLWIG_THREADS env > 1.
// Values below 1 resolve to 1.
int resolve_threads(int requested = 0);

// Runs fn(begin, end) over a fixed contiguous partition of [0, n) into
// `threads` chunks. Partitioning depends only on (n, threads), so results of
// independent per-index work are reproducible for a fixed thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace weylwig

#endif
