#include "sws/sequence_sampler.hpp"

#include <algorithm>

namespace sws {

namespace {

std::vector<Reservoir> make_single_slot_bank(std::uint64_t k) {
    std::vector<Reservoir> bank;
    bank.reserve(k);
    for (std::uint64_t j = 0; j < k; ++j) bank.emplace_back(1);
    return bank;
}

}  // namespace

void SequenceSamplerWR::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    if (!partial_) partial_ = make_single_slot_bank(k_);
    for (auto& r : *partial_) r.observe(e, src);
    ++count_;
    if (count_ % n_ == 0) {
        active_ = std::move(*partial_);
        partial_.reset();
    }
}

std::vector<StoredSample> SequenceSamplerWR::query_wr() const {
    require(count_ > 0, "query: no elements observed yet");
    const std::uint64_t window_start = count_ < n_ ? 0 : count_ - n_;
    std::vector<StoredSample> out;
    out.reserve(k_);
    for (std::uint64_t j = 0; j < k_; ++j) {
        if (active_) {
            const StoredSample& a = (*active_)[j].slot();
            if (a.index >= window_start) {
                out.push_back(a);
                continue;
            }
        }
        out.push_back((*partial_)[j].slot());
    }
    return out;
}

const StoredSample* SequenceSamplerWR::active_slot(std::uint64_t j) const {
    require(j < k_, "active_slot: coordinate out of range");
    if (!active_ || (*active_)[j].slots().empty()) return nullptr;
    return &(*active_)[j].slot();
}

const StoredSample* SequenceSamplerWR::partial_slot(std::uint64_t j) const {
    require(j < k_, "partial_slot: coordinate out of range");
    if (!partial_ || (*partial_)[j].slots().empty()) return nullptr;
    return &(*partial_)[j].slot();
}

std::uint64_t SequenceSamplerWR::stored_samples() const {
    std::uint64_t total = 0;
    if (active_) {
        for (const auto& r : *active_) total += r.slots().size();
    }
    if (partial_) {
        for (const auto& r : *partial_) total += r.slots().size();
    }
    return total;
}

void SequenceSamplerWOR::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    if (!partial_) partial_.emplace(k_);
    partial_->observe(e, src);
    ++count_;
    if (count_ % n_ == 0) {
        active_ = std::move(*partial_);
        partial_.reset();
    }
    rebuild_plan(src);
}

void SequenceSamplerWOR::rebuild_plan(RandomSource& src) {
    plan_.clear();
    if (!active_) {
        // Warm-up: the window is exactly the elements the partial bucket saw.
        for (std::size_t s = 0; s < partial_->slots().size(); ++s)
            plan_.push_back({false, s});
        return;
    }
    const std::uint64_t window_start = count_ - n_;  // active bucket exists => count_ >= n_
    std::uint64_t expired = 0;
    for (std::size_t s = 0; s < active_->slots().size(); ++s) {
        if (active_->slots()[s].index >= window_start) {
            plan_.push_back({true, s});
        } else {
            ++expired;
        }
    }
    if (expired > 0) {
        // Expired slots hold distinct indexes older than the window, so there
        // are at most as many of them as the partial bucket has slots. Each
        // is replaced by drawing uniformly without replacement from there.
        require(partial_ && expired <= partial_->slots().size(),
                "query plan: expired slots exceed partial bucket");
        for (const auto pos : partial_->sub_sample_positions(expired, src))
            plan_.push_back({false, pos});
    }
}

std::vector<StoredSample> SequenceSamplerWOR::query_wor() const {
    require(count_ > 0, "query: no elements observed yet");
    std::vector<StoredSample> out;
    out.reserve(plan_.size());
    for (const auto& entry : plan_) {
        const Reservoir& bucket = entry.from_active ? *active_ : *partial_;
        out.push_back(bucket.slots()[entry.slot]);
    }
    std::sort(out.begin(), out.end(),
              [](const StoredSample& a, const StoredSample& b) { return a.index < b.index; });
    return out;
}

std::uint64_t SequenceSamplerWOR::stored_samples() const {
    std::uint64_t total = 0;
    if (active_) total += active_->slots().size();
    if (partial_) total += partial_->slots().size();
    return total;
}

}  // namespace sws
