#pragma once

#include <cstddef>
#include <functional>

namespace epic {

// Runs fn(i) for i in [0, n) split across up to `threads` workers.
// Each index is computed exactly once and writes only its own output slot,
// so results are byte-identical for any thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace epic
