#pragma once

#include <cstddef>
#include <functional>

namespace batchbandit {

/// Number of worker threads to use; 0 resolves to the hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Runs fn(0), ..., fn(count - 1) across `threads` workers. Tasks must be
/// independent and write only to their own slots; any exception is rethrown
/// on the calling thread. With threads <= 1 this degenerates to a plain loop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace batchbandit
