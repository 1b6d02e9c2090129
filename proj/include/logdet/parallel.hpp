#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace logdet {

/// Worker count used when a caller passes 0: LOGDET_NUM_THREADS if set and
/// positive, otherwise std::thread::hardware_concurrency().
std::size_t default_thread_count();

/// Runs body(i) for every i in [0, count) on up to `threads` workers
/// (0 = default_thread_count()). The first exception thrown is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

} // namespace logdet
