#pragma once

#include <thread>
#include <utility>
#include <vector>

#include "wigsim/errors.hpp"

namespace wigsim {

// Static block partition of [0, count) over jobs threads: thread j owns the
// contiguous range [j*count/jobs, (j+1)*count/jobs).  The partition depends
// only on (count, jobs), so work-to-thread assignment is deterministic.
// f(i) is called exactly once per index, must be thread-safe across distinct
// indices and must not throw.
template <typename F>
void parallel_for(int count, int jobs, F&& f) {
    if (count < 0) throw ConfigError("parallel_for: negative count");
    if (jobs < 1) throw ConfigError("parallel_for: jobs must be >= 1");
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) {
        const int lo = static_cast<int>(static_cast<long long>(j) * count / jobs);
        const int hi = static_cast<int>(static_cast<long long>(j + 1) * count / jobs);
        pool.emplace_back([lo, hi, &f] {
            for (int i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace wigsim
