#pragma once

#include <cstddef>
#include <functional>

namespace diswl {

/// Worker cap used by the engine and the model. Defaults to the value of the
/// DISWL_THREADS environment variable, or the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Splits [0, n) into contiguous chunks and calls body(begin, end) for each
/// chunk, possibly concurrently. Chunk boundaries depend on the thread count,
/// so body must only write to locations owned by its range.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace diswl
