#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace cpafdm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent substream seed from a master seed and up to three
// coordinates (e.g. SNR index, trial index). Used to keep Monte Carlo runs
// bit-identical at any worker count.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (a + 0x9E3779B97F4A7C15ull));
    h = splitmix64(h ^ (b + 0xC2B2AE3D27D4EB4Full));
    h = splitmix64(h ^ (c + 0x165667B19E3779F9ull));
    return h;
}

// Random stream on top of mt19937_64 with explicit uniform/Gaussian
// conversions, so sequences do not depend on standard-library distribution
// internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_int(std::uint64_t bound) {  // [0, bound)
        if (bound == 0) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    int uniform_bit() { return static_cast<int>(next_u64() >> 63); }

    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_gaussian(double variance) {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        double r = std::sqrt(-std::log(u) * variance);
        double theta = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(theta), r * std::sin(theta)};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cpafdm
