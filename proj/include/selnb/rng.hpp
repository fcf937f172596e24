#pragma once
#include <cstdint>
#include <random>

namespace selnb {

// splitmix64 mixing step; used to derive well-separated stream seeds from a
// user seed plus a stream tag, so adding features/folds never perturbs the
// draws of existing ones.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(splitmix64(base) ^ splitmix64(tag));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

// Uniform double in [0,1) from the top 53 bits; pinned bit-level mapping.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection; pinned algorithm so shuffles
// are reproducible for a given engine state.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
    const std::uint64_t limit = ~0ULL - (~0ULL % bound);
    std::uint64_t x;
    do {
        x = eng();
    } while (x >= limit);
    return x % bound;
}

// Beta(a, b) via two gamma draws. If both gamma draws underflow to zero
// (possible for very small shapes), fall back to the two-point limit law of
// the Beta distribution, which puts mass a/(a+b) at 1.
inline double beta_draw(std::mt19937_64& eng, double a, double b) {
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    double x = ga(eng), y = gb(eng);
    if (x + y <= 0.0) return uniform01(eng) < a / (a + b) ? 1.0 : 0.0;
    return x / (x + y);
}

}  // namespace selnb
