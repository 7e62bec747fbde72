#pragma once

#include <cstdint>
#include <functional>

namespace martdim::parallel {

/// Worker count used by for_each_index. 0 restores the hardware default.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, count), statically partitioned into contiguous
/// chunks, one chunk per worker. fn must write only to per-index state, so
/// the result is identical for any worker count.
void for_each_index(std::int64_t count, const std::function<void(std::int64_t)>& fn);

}  // namespace martdim::parallel
