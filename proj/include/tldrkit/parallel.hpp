#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace tldrkit {

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Transform a batch in place-order: out[i] = fn(in[i]), with the batch
/// sliced across `threads` workers. Output order always equals input
/// order, so order-sensitive downstream steps (dedup, splitting) see the
/// same stream regardless of thread count.
template <typename In, typename Out, typename Fn>
void parallel_transform(const std::vector<In>& in, std::vector<Out>& out, Fn fn,
                        unsigned threads) {
    out.resize(in.size());
    if (in.empty()) return;
    if (threads <= 1 || in.size() < 2) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
        return;
    }
    const std::size_t n = in.size();
    const unsigned workers = threads > n ? static_cast<unsigned>(n) : threads;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) out[i] = fn(in[i]);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tldrkit
