#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace iifsdim {

// splitmix64; used to derive independent substream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ (0x517cc1b727220a95ULL * (stream + 1)));
}

// Deterministic uniform double in [0,1) from raw engine output. We avoid
// std::uniform_real_distribution because its output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 eng_;
};

// Worker count: IIFS_DIM_THREADS caps it, default hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("IIFS_DIM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
    }
    return std::min(hw, 16u);
}

// Run fn(chunk) for chunk = 0..n_chunks-1 on a worker pool. Chunk boundaries
// are fixed by the caller, so reductions combined in chunk order do not
// depend on the worker count or scheduling.
inline void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn) {
    if (n_chunks == 0) return;
    unsigned workers = std::min<std::size_t>(worker_count(), n_chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            while (true) {
                std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                fn(c);
            }
        });
    }
    for (auto& th : threads) th.join();
}

// Split [0,n) into fixed-size chunks and run body(chunk_index, lo, hi).
inline void parallel_ranges(std::size_t n, std::size_t chunk_size,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    parallel_chunks(n_chunks, [&](std::size_t c) {
        std::size_t lo = c * chunk_size;
        std::size_t hi = std::min(n, lo + chunk_size);
        body(c, lo, hi);
    });
}

}  // namespace iifsdim
