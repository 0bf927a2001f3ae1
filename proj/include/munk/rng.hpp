#ifndef MUNK_RNG_HPP
#define MUNK_RNG_HPP

#include <cmath>
#include <cstdint>

namespace munk {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen as the project-wide seedable
// generator because its output sequence is fully specified by the algorithm
// below, so seeded splits and factor initializations reproduce exactly on any
// platform or reimplementation. std::uniform_* distributions are not
// guaranteed to be stable across standard libraries and are not used here.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n) by rejection on the top multiple of n.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; used for strictly positive initializations.
    double next_unit_pos() { return 1.0 - next_unit(); }

    // Standard normal via Box-Muller on two next_unit draws.
    double next_normal() {
        double u1 = next_unit_pos();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    std::uint64_t state_;
};

// Fisher-Yates shuffle driven by SplitMix64; deterministic for a given seed.
template <typename Container>
void shuffle(Container& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace munk

#endif
