#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "levycond/rng.hpp"

namespace levycond {

/// Splits `total` paths into `chunks` near-equal pieces and runs
/// fn(chunk_index, paths_in_chunk, chunk_stream) for each, possibly on several
/// threads. Results land in a vector indexed by chunk, so any order-sensitive
/// reduction done afterwards in chunk order is deterministic for a fixed
/// (stream, chunk count) regardless of thread scheduling.
template <class Acc, class Fn>
std::vector<Acc> run_chunked(std::uint64_t total, unsigned chunks, RngStream base, Fn fn) {
    if (chunks == 0) chunks = 1;
    std::vector<Acc> results(chunks);
    std::vector<std::uint64_t> counts(chunks, total / chunks);
    for (std::uint64_t c = 0; c < total % chunks; ++c) ++counts[c];

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned workers = std::min(hw, chunks);
    if (workers <= 1) {
        for (unsigned c = 0; c < chunks; ++c) results[c] = fn(c, counts[c], base.substream(c));
        return results;
    }

    std::atomic<unsigned> next{0};
    auto work = [&]() {
        for (;;) {
            const unsigned c = next.fetch_add(1);
            if (c >= chunks) return;
            results[c] = fn(c, counts[c], base.substream(c));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    return results;
}

/// run_chunked followed by in-order merge via Acc::merge.
template <class Acc, class Fn>
Acc run_chunked_merge(std::uint64_t total, unsigned chunks, RngStream base, Fn fn) {
    auto parts = run_chunked<Acc>(total, chunks, base, fn);
    Acc out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out.merge(parts[i]);
    return out;
}

}  // namespace levycond
