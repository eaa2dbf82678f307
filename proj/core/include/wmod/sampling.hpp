// SPDX-License-Identifier: Apache-2.0
//
// Reproducible per-sample random streams and a small parallel loop for
// sweeps. Sample i always draws from a generator seeded with seed ^ i, so
// results do not depend on scheduling or thread count.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace wmod {

class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index) : gen_(seed ^ index) {}

    /// Uniform on [lo, hi) from the top 53 bits of one draw.
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::mt19937_64 gen_;
};

/// Worker count from WHITTAKER_MONO_THREADS; unset or 0 means hardware
/// concurrency.
unsigned thread_count_from_env();

/// Calls body(i) for i in [0, count) on up to `threads` threads. The first
/// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace wmod
