#pragma once

#include <cstddef>
#include <functional>

namespace windnet {

/// Worker count actually used: `requested`, or hardware concurrency when 0,
/// both capped by the WINDNET_THREADS environment variable.
std::size_t effective_threads(std::size_t requested = 0);

/// Runs fn(0..count-1) across up to `threads` workers. Completion order is
/// unspecified; callers must write results by index. The first exception
/// thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace windnet
