#pragma once

// Reproducible sampling.  std::uniform_real_distribution is implementation
// defined, so doubles are built directly from the top 53 bits of mt19937_64.

#include <cstdint>
#include <random>
#include <utility>

namespace lrl {

inline constexpr std::uint64_t kDefaultSeed = 42;

class UniformSampler {
public:
    explicit UniformSampler(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double next() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double next_open() noexcept
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

/// Radical inverse of `index` in `base`.
inline double radical_inverse(std::uint64_t index, unsigned base) noexcept
{
    const double inv = 1.0 / base;
    double f = inv, r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

/// 2-D Halton sequence (bases 2 and 3).  The seed picks the starting index so
/// that different seeds give disjoint but equally well spread point sets.
class Halton2 {
public:
    explicit Halton2(std::uint64_t seed = kDefaultSeed) : index_(seed + 1) {}

    /// Point in the open unit square.
    std::pair<double, double> next() noexcept
    {
        const auto i = index_++;
        return {radical_inverse(i, 2), radical_inverse(i, 3)};
    }

private:
    std::uint64_t index_;
};

} // namespace lrl
