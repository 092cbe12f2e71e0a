#pragma once

#include <cstdint>

#include "sws/types.hpp"

namespace sws::verify {

// Stream generator that front-loads an exponential burst: timestamp i
// (0 <= i <= 2*t0) carries 2^(2*t0 - i) elements, then every later timestamp
// carries one. The burst alone is 2^(2*t0+1) - 1 elements and forces a
// logarithmic-size cover, which is what the memory audit needs to stress.
class LowerBoundWorkload {
public:
    explicit LowerBoundWorkload(std::uint64_t t0) : t0_(t0) {
        require(t0_ >= 1, "workload: horizon must be positive");
        require(t0_ <= 12, "workload: horizon above 12 exceeds the desk-scale budget");
        remaining_at_tick_ = std::uint64_t(1) << (2 * t0_);
    }

    Element next() {
        Element e{index_++, tick_, {}};
        if (--remaining_at_tick_ == 0) {
            ++tick_;
            remaining_at_tick_ = tick_ <= 2 * t0_ ? std::uint64_t(1) << (2 * t0_ - tick_) : 1;
        }
        return e;
    }

    std::uint64_t burst_size() const { return (std::uint64_t(1) << (2 * t0_ + 1)) - 1; }

private:
    std::uint64_t t0_;
    std::uint64_t index_ = 0;
    std::uint64_t tick_ = 0;
    std::uint64_t remaining_at_tick_;
};

}  // namespace sws::verify
