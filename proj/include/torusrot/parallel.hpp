#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "torusrot/geom.hpp"

namespace torusrot {

// Worker cap for parallel loops; 0 restores the default (TORUSROT_THREADS or
// hardware concurrency).
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is handled exactly once; results
// must be written to per-index slots so the outcome is schedule independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);
Vec2 pairwise_sum(std::span<const Vec2> values);

}  // namespace torusrot
