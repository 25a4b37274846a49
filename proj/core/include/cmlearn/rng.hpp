#pragma once

#include <cstdint>
#include <numbers>
#include <cmath>

namespace cml {

// xoshiro-style splitmix generator with hand-rolled distributions, so that
// seeded runs are bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cml
