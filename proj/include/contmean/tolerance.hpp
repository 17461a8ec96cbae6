#ifndef CONTMEAN_TOLERANCE_HPP
#define CONTMEAN_TOLERANCE_HPP

#include <algorithm>
#include <cmath>

namespace contmean {

// Relative tolerance with an absolute floor, used for every equality test on
// accumulated distances (long shortest paths lose a few ulps per hop).
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    bool near(double a, double b) const {
        double scale = std::max(std::fabs(a), std::fabs(b));
        return std::fabs(a - b) <= std::max(abs, rel * scale);
    }

    // a < b and not merely a rounding artifact.
    bool strictly_less(double a, double b) const { return a < b && !near(a, b); }
};

inline const Tolerance& default_tolerance() {
    static const Tolerance tol{};
    return tol;
}

}  // namespace contmean

#endif
