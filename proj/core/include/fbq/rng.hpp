#pragma once

#include <cmath>
#include <cstdint>

namespace fbq {

/// xoshiro256** seeded through splitmix64. Hand-rolled so replications are
/// bit-identical across platforms and standard libraries.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : state_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t t = z;
            t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ULL;
            t = (t ^ (t >> 27)) * 0x94d049bb133111ebULL;
            w = t ^ (t >> 31);
        }
    }

    /// Independent substream for replication `rep` under a base seed.
    static Xoshiro256 substream(std::uint64_t seed, std::uint64_t rep) {
        return Xoshiro256(seed * 0x9e3779b97f4a7c15ULL + rep * 0xd1b54a32d192ed03ULL + 1ULL);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5ULL, 7) * 9ULL;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in (0, 1].
    double uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    bool bernoulli(double prob) { return uniform() <= prob; }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t state_[4];
};

} // namespace fbq
