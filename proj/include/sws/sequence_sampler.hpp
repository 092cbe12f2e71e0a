#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sws/random.hpp"
#include "sws/reservoir.hpp"
#include "sws/types.hpp"

namespace sws {

// Samplers over the window of the last n arrivals. The stream is cut into
// aligned buckets of n consecutive elements; at any moment the window spans
// a suffix of the last completed bucket (active) plus the elements of the
// bucket still being filled (partial). Each bucket carries its own reservoir,
// so total retention never exceeds 2k stored samples. A completed bucket's
// reservoir replaces the previous active one, which is discarded outright —
// nothing can query a window that old again.
//
// While fewer than n elements have arrived the window is simply everything
// seen so far, which is exactly the partial bucket's reservoir domain.

// k samples drawn with replacement: k independent single-slot reservoirs per
// bucket. Coordinate j of the answer is the active bucket's slot j while that
// slot is unexpired, and the partial bucket's slot j afterwards.
class SequenceSamplerWR {
public:
    SequenceSamplerWR(std::uint64_t n, std::uint64_t k) : n_(n), k_(k) {
        require(n_ > 0, "SequenceSamplerWR: window must be positive");
        require(k_ > 0, "SequenceSamplerWR: sample size must be positive");
    }

    void observe(const Element& e, RandomSource& src);

    // k samples, each uniform on the current window; repeatable between
    // observations (consumes no randomness).
    std::vector<StoredSample> query_wr() const;

    std::uint64_t arrivals() const { return count_; }
    std::uint64_t window_size() const { return count_ < n_ ? count_ : n_; }
    std::uint64_t stored_samples() const;

    // Stored candidate of coordinate j in either bucket (nullptr when that
    // bucket is absent or has seen nothing). Lets callers hang bookkeeping —
    // e.g. occurrence counters — off the retained candidates.
    const StoredSample* active_slot(std::uint64_t j) const;
    const StoredSample* partial_slot(std::uint64_t j) const;

private:
    std::uint64_t n_, k_;
    std::uint64_t count_ = 0;
    std::optional<std::vector<Reservoir>> active_;   // k single-slot reservoirs, bucket complete
    std::optional<std::vector<Reservoir>> partial_;  // k single-slot reservoirs, bucket filling
};

// k samples drawn without replacement: one k-slot reservoir per bucket. The
// answer keeps the active bucket's unexpired slots and tops up with a uniform
// sub-sample of the partial bucket's slots, one for each expired slot. That
// top-up is drawn when an observation changes the window and is then pinned,
// so queries are repeatable and randomness-free.
class SequenceSamplerWOR {
public:
    SequenceSamplerWOR(std::uint64_t n, std::uint64_t k) : n_(n), k_(k) {
        require(n_ > 0, "SequenceSamplerWOR: window must be positive");
        require(k_ > 0, "SequenceSamplerWOR: sample size must be positive");
    }

    void observe(const Element& e, RandomSource& src);

    // min(k, window) distinct samples, uniform over k-subsets of the window;
    // when the window holds fewer than k elements it is returned whole.
    std::vector<StoredSample> query_wor() const;

    std::uint64_t arrivals() const { return count_; }
    std::uint64_t window_size() const { return count_ < n_ ? count_ : n_; }
    std::uint64_t stored_samples() const;

private:
    struct PlanEntry {
        bool from_active = false;
        std::size_t slot = 0;
    };

    void rebuild_plan(RandomSource& src);

    std::uint64_t n_, k_;
    std::uint64_t count_ = 0;
    std::optional<Reservoir> active_;
    std::optional<Reservoir> partial_;
    std::vector<PlanEntry> plan_;  // slot references only; samples are not duplicated
};

}  // namespace sws
