#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <future>
#include <vector>

namespace qdelta {

/**
 * Evaluates fn(0), ..., fn(count - 1) on up to `threads` workers and returns
 * the results in index order. The first exception (by index) is rethrown.
 */
template <typename Fn>
auto ordered_map(std::size_t count, unsigned threads, Fn&& fn) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out;
    out.reserve(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(fn(i));
        }
        return out;
    }
    for (std::size_t start = 0; start < count; start += threads) {
        const std::size_t stop = std::min(count, start + threads);
        std::vector<std::future<R>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(std::launch::async, [&fn, i] { return fn(i); }));
        }
        for (auto& f : batch) {
            out.push_back(f.get());
        }
    }
    return out;
}

} // namespace qdelta
