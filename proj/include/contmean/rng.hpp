#ifndef CONTMEAN_RNG_HPP
#define CONTMEAN_RNG_HPP

#include <cstdint>
#include <random>

namespace contmean {

// mt19937_64 with hand-rolled draws so that seeded sequences do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double next_double() { return (engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform in [0, n).
    std::uint64_t next_index(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

private:
    std::mt19937_64 engine_;
};

}  // namespace contmean

#endif
