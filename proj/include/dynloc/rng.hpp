#ifndef DYNLOC_RNG_HPP
#define DYNLOC_RNG_HPP

// Counter-based random numbers: draw i of stream `seed` is a pure
// function of (seed, i), so ensemble initialization is reproducible and
// independent of how work is split across threads. Gaussian variates use
// Box-Muller on two counters (a deterministic transform, no rejection).

#include <cmath>
#include <cstdint>
#include <utility>

namespace dynloc {

namespace detail {
// splitmix64 output function
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;
}  // namespace detail

inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t index) {
    return detail::mix64(seed + (index + 1) * detail::golden_gamma);
}

// Uniform in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(counter_u64(seed, index) >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; safe under log().
inline double uniform01_pos(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>((counter_u64(seed, index) >> 11) + 1) * 0x1.0p-53;
}

// Standard normal pair from counters (index, index + 1).
inline std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t index) {
    const double u1 = uniform01_pos(seed, index);
    const double u2 = uniform01(seed, index + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.14159265358979323846264338327950288 * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace dynloc

#endif
