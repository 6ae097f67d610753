#ifndef GRIDTEST_PARALLEL_HPP
#define GRIDTEST_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gridtest {

/// Worker count: `requested` if positive, else GRIDTEST_THREADS, else the
/// hardware concurrency.
inline int thread_count(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GRIDTEST_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Splits [0, total) into contiguous chunks, one worker thread per chunk.
/// fn(chunk_index, begin, end) must only touch per-chunk state.
template <typename Fn>
void parallel_chunks(std::uint64_t total, int threads, Fn&& fn) {
    threads = thread_count(threads);
    if (total == 0) return;
    if (threads <= 1 || total == 1) {
        fn(0, std::uint64_t(0), total);
        return;
    }
    std::uint64_t nchunks = std::min<std::uint64_t>(threads, total);
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    std::uint64_t per = total / nchunks, extra = total % nchunks, begin = 0;
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        std::uint64_t len = per + (c < extra ? 1 : 0);
        pool.emplace_back([&fn, c, begin, len] { fn(c, begin, begin + len); });
        begin += len;
    }
    for (auto& t : pool) t.join();
}

} // namespace gridtest

#endif
