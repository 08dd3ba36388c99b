#pragma once

#include <cstddef>
#include <functional>

namespace rhombi {

/// Worker threads to use: RHOMBIKIT_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Calls fn(i) for i in [0, n), spread over worker_count() threads. Each
/// index runs exactly once; fn must be safe to call concurrently.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rhombi
