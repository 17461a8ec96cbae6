#ifndef CONTMEAN_REDUCTION_HPP
#define CONTMEAN_REDUCTION_HPP

#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace contmean {

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + carry; }
};

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, count) into fixed-size chunks, evaluates `body(begin, end)` for
// each chunk (each returning one partial sum), and folds the partials in
// chunk order. The chunk grid does not depend on the thread count, so the
// result is bit-identical for any number of workers.
double deterministic_chunked_sum(std::size_t count, std::size_t chunk_size, int threads,
                                 const std::function<double(std::size_t, std::size_t)>& body);

}  // namespace contmean

#endif
