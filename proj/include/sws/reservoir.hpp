#pragma once

#include <cstdint>
#include <vector>

#include "sws/random.hpp"
#include "sws/types.hpp"

namespace sws {

// Classic k-slot reservoir: after any number of observations the slots hold
// a uniform k-subset (all elements while fewer than k have been seen).
// A single-slot reservoir is the k = 1 case of the same type.
class Reservoir {
public:
    explicit Reservoir(std::uint64_t capacity) : capacity_(capacity) {
        require(capacity_ > 0, "Reservoir: capacity must be positive");
    }

    // The i-th call (1-based) keeps e with probability min(1, k/i); on
    // acceptance the victim slot is chosen uniformly.
    void observe(const Element& e, RandomSource& src) {
        ++seen_;
        if (slots_.size() < capacity_) {
            slots_.push_back(to_stored(e));
            return;
        }
        if (src.bernoulli(capacity_, seen_)) {
            const auto victim = static_cast<std::size_t>(src.uniform_index(capacity_));
            slots_[victim] = to_stored(e);
        }
    }

    // Uniform i-subset of the current slots, as slot positions. Composing a
    // uniform j-subset (the slots) with a uniform i-subset of it yields a
    // uniform i-subset of everything observed.
    std::vector<std::size_t> sub_sample_positions(std::uint64_t i, RandomSource& src) const {
        require(i <= slots_.size(), "sub_sample: more slots requested than stored");
        std::vector<std::size_t> pool(slots_.size());
        for (std::size_t p = 0; p < pool.size(); ++p) pool[p] = p;
        std::vector<std::size_t> picked;
        picked.reserve(i);
        for (std::uint64_t step = 0; step < i; ++step) {
            const auto at = static_cast<std::size_t>(src.uniform_index(pool.size()));
            picked.push_back(pool[at]);
            pool[at] = pool.back();
            pool.pop_back();
        }
        return picked;
    }

    std::vector<StoredSample> sub_sample(std::uint64_t i, RandomSource& src) const {
        std::vector<StoredSample> out;
        out.reserve(i);
        for (const auto pos : sub_sample_positions(i, src)) out.push_back(slots_[pos]);
        return out;
    }

    std::uint64_t capacity() const { return capacity_; }
    std::uint64_t seen() const { return seen_; }
    bool full() const { return slots_.size() == capacity_; }
    const std::vector<StoredSample>& slots() const { return slots_; }

    // Convenience for single-slot reservoirs.
    const StoredSample& slot() const {
        require(!slots_.empty(), "Reservoir: no element observed yet");
        return slots_.front();
    }

private:
    std::uint64_t capacity_;
    std::uint64_t seen_ = 0;
    std::vector<StoredSample> slots_;
};

}  // namespace sws
