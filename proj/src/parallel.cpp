#include "greedylab/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef GREEDYLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace greedylab {

int effective_threads() {
#ifdef GREEDYLAB_HAVE_OPENMP
    if (const char* env = std::getenv("GREEDYLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<std::pair<int64_t, int64_t>> fixed_chunks(int64_t count) {
    std::vector<std::pair<int64_t, int64_t>> chunks;
    if (count <= 0) return chunks;
    // Chunk layout depends only on the problem size.
    int64_t target = 256;
    int64_t n_chunks = std::min<int64_t>(target, count);
    int64_t base = count / n_chunks, extra = count % n_chunks;
    int64_t begin = 0;
    for (int64_t c = 0; c < n_chunks; ++c) {
        int64_t len = base + (c < extra ? 1 : 0);
        chunks.emplace_back(begin, begin + len);
        begin += len;
    }
    return chunks;
}

ReduceResult reduce_max(int64_t count, const std::function<double(int64_t)>& score,
                        ExecPolicy policy) {
    auto chunks = fixed_chunks(count);
    std::vector<ReduceResult> partial(chunks.size());

    auto scan_chunk = [&](size_t c) {
        ReduceResult best;
        for (int64_t i = chunks[c].first; i < chunks[c].second; ++i) {
            double v = score(i);
            if (!best.found || v > best.value) {
                best = {i, v, true};
            }
        }
        partial[c] = best;
    };

#ifdef GREEDYLAB_HAVE_OPENMP
    if (policy == ExecPolicy::Parallel) {
        int threads = effective_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (size_t c = 0; c < chunks.size(); ++c) scan_chunk(c);
    } else
#endif
    {
        (void)policy;
        for (size_t c = 0; c < chunks.size(); ++c) scan_chunk(c);
    }

    // Merge in chunk order: identical to a serial left-to-right scan.
    ReduceResult best;
    for (const auto& p : partial) {
        if (p.found && (!best.found || p.value > best.value)) best = p;
    }
    return best;
}

void parallel_for(int64_t count, const std::function<void(int64_t)>& body, ExecPolicy policy) {
#ifdef GREEDYLAB_HAVE_OPENMP
    if (policy == ExecPolicy::Parallel) {
        int threads = effective_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
        for (int64_t i = 0; i < count; ++i) body(i);
        return;
    }
#endif
    (void)policy;
    for (int64_t i = 0; i < count; ++i) body(i);
}

}  // namespace greedylab
