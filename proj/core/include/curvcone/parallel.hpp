#pragma once

#include <cstddef>
#include <functional>

namespace curvcone {

/// Worker count: CURVCONE_THREADS when set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count) over thread_count() workers. Exceptions
/// from workers are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace curvcone
