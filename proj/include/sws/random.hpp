#pragma once

#include <cstdint>
#include <random>

#include "sws/types.hpp"

namespace sws {

// 128-bit unsigned arithmetic covers every probability ratio the samplers
// form: numerators and denominators are products of at most two
// window-scale quantities, so they fit without arbitrary precision.
using u128 = unsigned __int128;

// Source of all randomness used by the samplers. Everything is expressed
// through two primitives so that a test harness can substitute a source
// that enumerates every outcome instead of drawing one.
//
// Draw-count contract (identical for every implementation):
//   - uniform_index(1) and bernoulli with num == 0 or num == den are
//     deterministic and consume no randomness;
//   - every other call consumes exactly one decision.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform integer in [0, m). m == 0 is a contract violation.
    virtual u128 uniform_index(u128 m) = 0;

    // True with probability exactly num/den, realized as one uniform draw:
    // uniform_index(den) < num. Requires den > 0 and num <= den.
    virtual bool bernoulli(u128 num, u128 den) {
        require(den > 0, "bernoulli: zero denominator");
        require(num <= den, "bernoulli: probability above one");
        if (num == 0) return false;
        if (num == den) return true;
        return uniform_index(den) < num;
    }
};

// Deterministic source backed by std::mt19937_64 (fully specified by the
// standard, so runs reproduce across platforms). uniform_index uses
// rejection, never modulo bias: results are exactly uniform.
class SeededSource final : public RandomSource {
public:
    explicit SeededSource(std::uint64_t seed) : engine_(seed) {}

    u128 uniform_index(u128 m) override;

private:
    std::uint64_t next_u64() { return engine_(); }
    u128 next_u128();

    std::mt19937_64 engine_;
};

}  // namespace sws
