// parallel.hpp - bounded worker pool for independent grid points

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace dlz {

// Evaluates fn(0), ..., fn(n - 1) on up to `workers` threads. Results are stored by index,
// so the output never depends on scheduling. If any call throws, the exception of the
// lowest failing index is rethrown after all workers have joined.
template <class Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using Result = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<std::optional<Result>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (count == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work);
    }

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<Result> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace dlz
