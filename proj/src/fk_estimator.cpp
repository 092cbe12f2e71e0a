#include "sws/fk_estimator.hpp"

namespace sws {

namespace {

u128 ipow(std::uint64_t base, std::uint64_t exp) {
    u128 out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out *= base;
    return out;
}

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    return out;
}

}  // namespace

std::string ExactRatio::str() const { return u128_str(num) + "/" + std::to_string(den); }

FkEstimator::FkEstimator(std::uint64_t n, std::uint64_t k_moment, std::uint64_t instances)
    : n_(n), k_moment_(k_moment) {
    require(n_ > 0, "FkEstimator: window must be positive");
    require(k_moment_ >= 1, "FkEstimator: moment must be at least one");
    require(instances >= 1, "FkEstimator: need at least one instance");
    instances_.reserve(instances);
    for (std::uint64_t i = 0; i < instances; ++i) instances_.emplace_back(n_);
}

void FkEstimator::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    for (auto& inst : instances_) {
        // The active candidate keeps counting its value through later buckets
        // while it remains stored.
        if (const StoredSample* a = inst.sampler.active_slot(0); a && a->value == e.value) {
            ++inst.active_matches;
        }
        inst.sampler.observe(e, src);
        if (const StoredSample* p = inst.sampler.partial_slot(0)) {
            if (p->index == e.index) {
                inst.partial_matches = 1;  // fresh candidate counts itself
            } else if (p->value == e.value) {
                ++inst.partial_matches;
            }
        } else {
            // e completed a bucket and the filling candidate was promoted; e
            // itself still had its chance to land in (or match) that slot.
            const StoredSample* a = inst.sampler.active_slot(0);
            require(a != nullptr, "observe: completed bucket without a candidate");
            if (a->index == e.index) {
                inst.active_matches = 1;
            } else {
                inst.active_matches = inst.partial_matches + (a->value == e.value ? 1 : 0);
            }
            inst.partial_matches = 0;
        }
    }
    ++count_;
}

std::uint64_t FkEstimator::instance_estimate(std::size_t i) const {
    if (count_ == 0) throw EmptyWindowError("fk_query: no elements observed yet");
    require(i < instances_.size(), "fk_query: no such instance");
    const Instance& inst = instances_[i];
    const std::uint64_t window_start = count_ < n_ ? 0 : count_ - n_;

    // The same slot the sampler's query would return, with its counter.
    const StoredSample* a = inst.sampler.active_slot(0);
    const std::uint64_t matches = (a && a->index >= window_start)
                                      ? inst.active_matches
                                      : inst.partial_matches;
    require(matches >= 1, "fk_query: candidate without occurrences");

    const u128 contribution = ipow(matches, k_moment_) - ipow(matches - 1, k_moment_);
    const u128 estimate = u128(window_size()) * contribution;
    require((estimate >> 64) == 0, "fk_query: estimate exceeds 64 bits");
    return static_cast<std::uint64_t>(estimate);
}

ExactRatio FkEstimator::fk_query() const {
    u128 sum = 0;
    for (std::size_t i = 0; i < instances_.size(); ++i) sum += instance_estimate(i);
    return {sum, instances_.size()};
}

}  // namespace sws
