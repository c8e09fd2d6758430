#ifndef RC_PARALLEL_HPP
#define RC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace rc {

/// Runs body(i, worker) for i in [0, n) on `threads` workers, strided by worker.
/// Callers merge per-worker results with an order-independent rule.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body)
{
    threads = std::max(1, threads);
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) body(i, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Smallest index i with f(i, worker) engaged, scanning in blocks so that the
/// answer does not depend on the number of workers.
template <class R, class F>
std::optional<std::pair<std::size_t, R>> first_hit(std::size_t n, int threads, F&& f)
{
    threads = std::max(1, threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i)
            if (auto r = f(i, 0)) return std::make_pair(i, std::move(*r));
        return std::nullopt;
    }
    // blocks grow geometrically; the earliest hit inside the first block
    // containing any hit is the global minimum
    std::size_t block = 16 * static_cast<std::size_t>(threads);
    std::vector<std::optional<R>> slot;
    for (std::size_t start = 0; start < n; start += block, block = std::min<std::size_t>(block * 2, 1 << 16)) {
        std::size_t len = std::min(block, n - start);
        slot.assign(len, std::nullopt);
        parallel_for(len, threads, [&](std::size_t j, int w) { slot[j] = f(start + j, w); });
        for (std::size_t j = 0; j < len; ++j)
            if (slot[j]) return std::make_pair(start + j, std::move(*slot[j]));
    }
    return std::nullopt;
}

} // namespace rc

#endif
