#pragma once

#include <cstddef>
#include <functional>

namespace tensorjl {

/// Number of worker threads to use when the caller passes 0.
[[nodiscard]] std::size_t default_thread_count() noexcept;

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Indices are split into contiguous chunks; the body must only write state
/// owned by its index. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace tensorjl
