#pragma once

#include <cstddef>
#include <functional>

namespace msns {

// 0 means "pick automatically"; the result never exceeds task_count.
unsigned resolve_worker_count(unsigned requested, std::size_t task_count);

// Runs fn(0..count-1) on up to `workers` threads. Tasks must be independent;
// the first exception thrown by any task is rethrown on the caller. Results
// must be written to per-index slots so the schedule cannot affect output.
void run_tasks(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace msns
