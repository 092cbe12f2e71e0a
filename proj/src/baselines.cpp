#include "sws/baselines.hpp"

namespace sws {

namespace {

// Uniform pick among the n indexes after e: the element that will take over
// when e expires.
std::uint64_t successor_of(const Element& e, std::uint64_t n, RandomSource& src) {
    return e.index + 1 + static_cast<std::uint64_t>(src.uniform_index(n));
}

}  // namespace

void ChainSampler::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    ++count_;

    // Fresh pick at 1/count while the window fills, 1/(n+1) from then on.
    // 1/(n+1) — not 1/n — is what makes the sample exactly uniform: when the
    // front expires, its stored successor is uniform over the n indexes that
    // follow it, one of which is the expiry-step arrival itself, so the newest
    // element already inherits probability mass through the chain.
    const std::uint64_t cap = n_ + 1;
    const std::uint64_t pick_odds = count_ < cap ? count_ : cap;
    if (src.bernoulli(1, pick_odds)) {
        // e supersedes the current sample and its pending chain entirely.
        chain_.clear();
        chain_.push_back({to_stored(e), successor_of(e, n_, src)});
        return;
    }
    if (!chain_.empty() && chain_.back().successor == e.index) {
        chain_.push_back({to_stored(e), successor_of(e, n_, src)});
    }

    // Retire expired links only after e had its chance to join: a successor
    // index may equal the very arrival on which its predecessor expires.
    const std::uint64_t window_start = count_ < n_ ? 0 : count_ - n_;
    while (!chain_.empty() && chain_.front().sample.index < window_start) {
        chain_.pop_front();
        require(!chain_.empty(), "chain: expired without a stored successor");
    }
}

void PrioritySampler::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    ++count_;

    const std::uint64_t window_start = count_ < n_ ? 0 : count_ - n_;
    while (!staircase_.empty() && staircase_.front().sample.index < window_start) {
        staircase_.pop_front();
    }

    const auto priority = static_cast<std::uint64_t>(src.uniform_index(u128(1) << 64));
    // Anything at most as strong as the newcomer can never be the maximum
    // again: the newcomer outlives it and wins ties as the newer element.
    while (!staircase_.empty() && staircase_.back().priority <= priority) {
        staircase_.pop_back();
    }
    staircase_.push_back({to_stored(e), priority});
}

}  // namespace sws
