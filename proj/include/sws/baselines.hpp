#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "sws/random.hpp"
#include "sws/types.hpp"

namespace sws {

// Classical single-sample baselines over the last-n window. They are cheap
// but flawed in ways the bench makes measurable: periodic sampling is
// predictable, chain sampling's memory is only expected-constant and its
// sample is biased conditioned on low memory, priority sampling keeps an
// expected-logarithmic candidate staircase.

// Keeps one slot. A uniform pick of the first n elements fixes the anchor
// residue; from then on the sample is replaced deterministically by the
// element one full window later, so every sample index is anchor + s*n.
class PeriodicSampler {
public:
    explicit PeriodicSampler(std::uint64_t n) : n_(n) {
        require(n_ > 0, "PeriodicSampler: window must be positive");
    }

    void observe(const Element& e, RandomSource& src) {
        require(e.index == count_, "observe: element index must equal arrivals so far");
        ++count_;
        if (count_ <= n_) {
            // Reservoir warm-up: uniform over the first n once they arrived.
            if (src.bernoulli(1, count_)) slot_ = to_stored(e);
            if (count_ == n_) anchor_ = slot_->index % n_;
            return;
        }
        if (e.index % n_ == anchor_) slot_ = to_stored(e);
    }

    const StoredSample& query() const {
        require(slot_.has_value(), "query: no elements observed yet");
        return *slot_;
    }

    std::uint64_t stored_samples() const { return slot_ ? 1 : 0; }

private:
    std::uint64_t n_;
    std::uint64_t count_ = 0;
    std::uint64_t anchor_ = 0;
    std::optional<StoredSample> slot_;
};

// Chain sampling: each arrival becomes the sample with probability
// 1/min(i, n); a held element knows which future index will replace it when
// it expires, and stores that successor once it arrives, forming a chain.
// The front of the chain is always the current sample.
class ChainSampler {
public:
    explicit ChainSampler(std::uint64_t n) : n_(n) {
        require(n_ > 0, "ChainSampler: window must be positive");
    }

    void observe(const Element& e, RandomSource& src);

    const StoredSample& query() const {
        require(!chain_.empty(), "query: no elements observed yet");
        return chain_.front().sample;
    }

    // Chain records currently held; the bench meters its maximum.
    std::uint64_t stored_samples() const { return chain_.size(); }

private:
    struct Link {
        StoredSample sample;
        std::uint64_t successor;  // index that will replace this link on expiry
    };

    std::uint64_t n_;
    std::uint64_t count_ = 0;
    std::deque<Link> chain_;
};

// Priority sampling: every element draws a uniform 64-bit priority; the
// sample is the highest-priority active element. Kept candidates are those
// that could still become the sample: priorities strictly decreasing from
// the front, arrival order increasing (ties resolve to the newer element).
class PrioritySampler {
public:
    explicit PrioritySampler(std::uint64_t n) : n_(n) {
        require(n_ > 0, "PrioritySampler: window must be positive");
    }

    void observe(const Element& e, RandomSource& src);

    const StoredSample& query() const {
        require(!staircase_.empty(), "query: no active elements");
        return staircase_.front().sample;
    }

    std::uint64_t stored_samples() const { return staircase_.size(); }

private:
    struct Candidate {
        StoredSample sample;
        std::uint64_t priority;
    };

    std::uint64_t n_;
    std::uint64_t count_ = 0;
    std::deque<Candidate> staircase_;
};

}  // namespace sws
