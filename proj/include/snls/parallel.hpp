// parallel.hpp — deterministic work distribution.  Items are indexed and the
// assignment depends only on the index, never on the thread count or timing,
// so reductions over the results are bit-stable for any --threads value.
#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace snls {

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    int nw = int(std::min<std::size_t>(std::size_t(threads), count));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nw);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = std::size_t(w); i < count; i += std::size_t(nw)) fn(i);
            } catch (...) {
                errors[std::size_t(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace snls
