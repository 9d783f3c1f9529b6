#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace planestereo::detail {

/// Runs fn(begin, end) over disjoint row bands. Band boundaries are aligned
/// to `align` rows so callers that bucket rows into cells never split a cell
/// across workers; results are identical to the sequential order.
inline void parallelRows(int rows, int threads, int align,
                         const std::function<void(int, int)>& fn) {
    if (rows <= 0) {
        return;
    }
    if (threads <= 1 || rows < 2 * align) {
        fn(0, rows);
        return;
    }
    const int bands = std::min(threads, std::max(1, rows / align));
    std::vector<std::thread> workers;
    workers.reserve(bands);
    int start = 0;
    for (int b = 0; b < bands; ++b) {
        int end = (b + 1 == bands) ? rows : ((rows * (b + 1) / bands) / align) * align;
        end = std::clamp(end, start, rows);
        if (end > start) {
            workers.emplace_back(fn, start, end);
        }
        start = end;
    }
    for (auto& w : workers) {
        w.join();
    }
}

} // namespace planestereo::detail
