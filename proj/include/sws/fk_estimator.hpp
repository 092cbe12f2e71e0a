#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sws/random.hpp"
#include "sws/sequence_sampler.hpp"
#include "sws/types.hpp"

namespace sws {

// Exact ratio returned by the estimator (numerator can outgrow 64 bits at
// large windows and moments).
struct ExactRatio {
    u128 num = 0;
    std::uint64_t den = 1;

    double to_double() const {
        return (static_cast<double>(static_cast<std::uint64_t>(num >> 64)) * 18446744073709551616.0 +
                static_cast<double>(static_cast<std::uint64_t>(num))) /
               static_cast<double>(den);
    }
    std::string str() const;
};

// Estimates the k-th frequency moment of the last-n window: with c the
// number of occurrences of a uniformly sampled element's value counted from
// that element onward (itself included), window * (c^k - (c-1)^k) is an
// unbiased estimate of sum_v count(v)^k. Averaging r independent instances
// tightens it.
//
// Each instance is a one-slot-per-bucket window sampler whose stored
// candidates carry a running occurrence counter; counters travel with their
// candidate from filling bucket to active bucket and reset when the
// candidate itself is replaced. Nothing beyond the sampler state plus one
// counter per stored candidate is retained.
class FkEstimator {
public:
    FkEstimator(std::uint64_t n, std::uint64_t k_moment, std::uint64_t instances);

    void observe(const Element& e, RandomSource& src);

    // Average of the per-instance estimates for the current window, exact.
    ExactRatio fk_query() const;

    std::uint64_t arrivals() const { return count_; }
    std::uint64_t window_size() const { return count_ < n_ ? count_ : n_; }

    // Single-instance estimate, exposed for the unbiasedness check.
    std::uint64_t instance_estimate(std::size_t i) const;

private:
    struct Instance {
        SequenceSamplerWR sampler;
        std::uint64_t active_matches = 0;
        std::uint64_t partial_matches = 0;

        explicit Instance(std::uint64_t n) : sampler(n, 1) {}
    };

    std::uint64_t n_, k_moment_;
    std::uint64_t count_ = 0;
    std::vector<Instance> instances_;
};

}  // namespace sws
