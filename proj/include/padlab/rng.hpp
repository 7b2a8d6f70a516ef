#pragma once

#include <cstdint>

namespace padlab {

/// Counter-based splittable generator (SplitMix64 core).  A trial stream
/// is derived from (master seed, stream index), so campaigns can evaluate
/// trials in any order or in parallel and stay bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)))) {}

    static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
        return Rng(master_seed, 0x638f6d2ab4cf1907ull + trial);
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // uniform in [0, n); n >= 1.  Plain rejection: deterministic across
    // platforms, unlike std::uniform_int_distribution.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return next() & 1; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
};

}  // namespace padlab
