#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace extscen {

/// SplitMix64 step. Used for seed derivation only; the simulation streams
/// run on mt19937_64 engines seeded through it.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based substream derivation: a master seed plus up to three
/// stream coordinates (member uid, period, purpose tag) map to an
/// independent engine seed. Reordering or removing other streams never
/// changes the result for a given coordinate tuple.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0)
{
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9E3779B97F4A7C15ull;
    h ^= splitmix64(s);
    s ^= b + 0xA0761D6478BD642Full;
    h ^= splitmix64(s);
    s ^= c + 0xE7037ED1A0B428DBull;
    h ^= splitmix64(s);
    return h;
}

/// Deterministic random stream. Uniform and normal variates are generated
/// from raw engine words (no std::*_distribution), so a given seed yields
/// the same stream on every platform. normal() consumes exactly two
/// uniforms per call.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (cosine branch).
    double normal()
    {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 eng_;
};

} // namespace extscen
