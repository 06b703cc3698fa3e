#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace decentpeer {

// Deterministic counter-free stream RNG. splitmix64 is used both as the
// generator step and to derive independent child streams, so draws do not
// depend on platform library internals.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound) by rejection, bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Independent child stream keyed by (label, index).
    RngStream child(std::uint64_t label, std::uint64_t index = 0) const {
        std::uint64_t mixed = state_;
        mixed ^= 0xd6e8feb86659fd93ULL * (label + 1);
        mixed = (mixed ^ (mixed >> 32)) * 0xff51afd7ed558ccdULL;
        mixed ^= 0xc2b2ae3d27d4eb4fULL * (index + 1);
        mixed = (mixed ^ (mixed >> 29)) * 0xc4ceb9fe1a85ec53ULL;
        return RngStream(mixed ^ (mixed >> 32));
    }

private:
    std::uint64_t state_;
};

// Sample k distinct indices uniformly from [0, n) via partial Fisher-Yates.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, RngStream& rng);

}  // namespace decentpeer
