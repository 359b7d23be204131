#pragma once

#include <cstdint>

namespace lemni {

/// splitmix64 generator. Used instead of <random> distributions so that
/// streams are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Independent stream for (seed, index); the basis of per-trial streams.
    static Rng stream(std::uint64_t seed, std::uint64_t index)
    {
        Rng mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
        return Rng(mix.next());
    }

private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

}  // namespace lemni
