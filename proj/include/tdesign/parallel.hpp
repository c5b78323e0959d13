#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tdesign {

// Worker cap: --threads / TDESIGN_THREADS / hardware. Results never depend on
// the worker count: work is cut into fixed-size chunks, each chunk reduces
// serially in index order, and chunk partials combine in a fixed tree order.
inline std::atomic<unsigned>& thread_override() {
    static std::atomic<unsigned> v{0};
    return v;
}

inline unsigned worker_count() {
    if (unsigned o = thread_override().load()) return o;
    if (const char* env = std::getenv("TDESIGN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Partial must support combine(a, b) -> void merging b into a.
template <class Partial, class ChunkFn, class CombineFn>
Partial chunked_reduce(std::uint64_t count, std::uint64_t chunk_size, Partial zero,
                       const ChunkFn& run_chunk, const CombineFn& combine) {
    if (count == 0) return zero;
    const std::uint64_t n_chunks = (count + chunk_size - 1) / chunk_size;
    std::vector<Partial> partials(std::size_t(n_chunks), zero);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const std::uint64_t begin = c * chunk_size;
            const std::uint64_t end = std::min(count, begin + chunk_size);
            run_chunk(begin, end, partials[std::size_t(c)]);
        }
    };
    const unsigned n_workers = std::min<std::uint64_t>(worker_count(), n_chunks);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // pairwise tree fold, independent of worker count
    std::size_t width = partials.size();
    while (width > 1) {
        const std::size_t half = (width + 1) / 2;
        for (std::size_t i = 0; i + half < width; ++i) combine(partials[i], partials[i + half]);
        width = half;
    }
    return partials[0];
}

} // namespace tdesign
