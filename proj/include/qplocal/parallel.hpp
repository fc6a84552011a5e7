#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qplocal {

/// Runs body(i) for i in [0, count) across workers (0 = hardware concurrency).
/// Work is claimed through an atomic counter; results must be written to
/// index-addressed slots so the outcome is independent of scheduling.
template <typename Body>
void parallel_for_index(std::size_t count, int workers, Body&& body) {
    unsigned n = workers > 0 ? static_cast<unsigned>(workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    if (n <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace qplocal
