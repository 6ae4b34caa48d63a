#pragma once

#include <cstdint>
#include <random>

namespace msitree {

/// Deterministic random source. std::mt19937_64 provides the raw stream
/// (its output sequence is pinned by the standard); the uniform and normal
/// transforms are implemented here rather than with std::*_distribution,
/// whose algorithms are implementation-defined. Same seed, same sequence,
/// on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t nextU64() { return engine_(); }

    /// Uniform integer in [0, bound) by rejection sampling; no modulo bias.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; one spare kept between calls.
    double normal();

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

/// Mixes a base seed with up to three stream indices into an independent
/// seed (splitmix64 finalizer chain). Used to derive per-trial seeds.
std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0);

} // namespace msitree
