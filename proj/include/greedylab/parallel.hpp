#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace greedylab {

enum class ExecPolicy { Serial, Parallel };

// Honors GREEDYLAB_THREADS when set, otherwise the OpenMP default.
int effective_threads();

// Splits [0, count) into chunks whose layout depends only on count, never on
// the thread count, so parallel and serial runs visit identical chunk
// boundaries and the merged result is bit-identical.
std::vector<std::pair<int64_t, int64_t>> fixed_chunks(int64_t count);

// Argmax reduction over an index space. `score` returns the value of item i;
// `better(a, b)` says a strictly improves on b. Ties keep the smallest index,
// matching a plain serial left-to-right scan under both policies.
struct ReduceResult {
    int64_t index = -1;
    double value = 0.0;
    bool found = false;
};

ReduceResult reduce_max(int64_t count, const std::function<double(int64_t)>& score,
                        ExecPolicy policy);

// Runs body(i) for every i in [0, count); order unspecified under Parallel.
void parallel_for(int64_t count, const std::function<void(int64_t)>& body, ExecPolicy policy);

}  // namespace greedylab
