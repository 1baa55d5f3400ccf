#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace evolattice {

// SplitMix64 output function. Bijective on 64-bit states, so distinct inputs
// always produce distinct outputs.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-replica seed derivation. Part of the external contract: replica r of a
// run with base seed s always uses splitmix64(s + GOLDEN * (r + 1)), where
// GOLDEN = 0x9E3779B97F4A7C15. The map r -> seed is injective for fixed s.
inline std::uint64_t derive_replica_seed(std::uint64_t base_seed, std::uint64_t replica_index) {
    return splitmix64(base_seed + 0x9E3779B97F4A7C15ULL * (replica_index + 1));
}

// Deterministic draw helpers over std::mt19937_64. The standard pins the
// mt19937_64 sequence, and these helpers avoid std::*_distribution, whose
// output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform index in [0, n) via the widening-multiply reduction.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    // Exponential with the given rate; u < 1 keeps the log argument positive.
    double exponential(double rate) {
        const double u = uniform();
        return -std::log1p(-u) / rate;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace evolattice
