#include "sws/timestamp_sampler.hpp"

#include <algorithm>

namespace sws {

ProbeSample gen_y(const BucketStructure& head, std::uint64_t beta, RandomSource& src) {
    const std::uint64_t alpha = head.width();
    require(alpha > 0, "gen_y: empty head bucket");
    require(beta > 0, "gen_y: empty tail cover");

    const ProbeSample boundary{head.x, head.t_start};
    const std::uint64_t i = head.y - head.q.index;  // Q as "i-th newest", i in [1, alpha]
    require(i >= 1 && i <= alpha, "gen_y: stored Q outside its bucket");
    if (i == alpha) return boundary;  // Q is the first element: the probe must be it

    // Success odds scaled by alpha so that the uniform choice of Q folds in:
    // P(Y = i-th newest) = beta / ((beta+i)(beta+i-1)).
    const u128 num = u128(alpha) * beta;
    const u128 den = u128(beta + i) * (beta + i - 1);
    require(num <= den, "gen_y: odds above one (alpha exceeds beta?)");
    if (src.bernoulli(num, den)) return {head.q.index, head.q.timestamp};
    return boundary;
}

bool gen_x(const BucketStructure& head, std::uint64_t beta, std::uint64_t now, std::uint64_t t0,
           RandomSource& src) {
    const std::uint64_t alpha = head.width();
    require(alpha <= beta, "gen_x: head wider than tail cover");
    const ProbeSample y = gen_y(head, beta, src);
    if (is_active(y.timestamp, now, t0)) return false;  // active probe decides; no second draw
    return src.bernoulli(alpha, beta);
}

void TimestampSampler::observe(const Element& e, RandomSource& src) {
    advance_time(e.timestamp);
    ingest(e, src);
}

void TimestampSampler::advance_time(std::uint64_t now) {
    require(!started_ || now >= now_, "advance_time: clock must not run backwards");
    started_ = true;
    now_ = now;
    ++version_;
    if (!zeta_) return;

    const SplitResult split = zeta_->split_at_expiry(now_, t0_);
    switch (split.kind) {
        case SplitResult::all_active:
            break;  // any existing head started expired before and still is
        case SplitResult::all_expired:
            head_.reset();
            zeta_.reset();
            break;
        case SplitResult::straddle:
            // Everything older than the straddling bucket — including a
            // previous head — is entirely expired and already discarded.
            head_ = split.head;
            break;
    }
}

void TimestampSampler::ingest(const Element& e, RandomSource& src) {
    require(started_ && e.timestamp <= now_, "ingest: advance the clock first");
    require(is_active(e.timestamp, now_, t0_), "ingest: element is already expired");
    ++version_;
    if (!zeta_) {
        require(!head_, "ingest: head without a tail cover");
        zeta_ = ZetaDecomposition::start_at(e);
        return;
    }
    zeta_->incr(e, src);
}

StoredSample TimestampSampler::query(RandomSource& src) {
    if (!zeta_) throw EmptyWindowError("query: timestamp window is empty");
    if (cached_ && cached_->version == version_) return cached_->sample;

    StoredSample result;
    if (!head_) {
        // Case 1: the cover is exactly the window.
        result = sample_union(zeta_->buckets(), src);
    } else {
        // Case 2: take the head's sample when it is provably a uniform pick
        // of the whole window — its odds, alpha/(beta+gamma), are realized by
        // gen_x without knowing gamma. Otherwise fall back on the tail.
        const std::uint64_t alpha = head_->width();
        const std::uint64_t beta = zeta_->span();
        require(alpha <= beta, "query: straddle invariant alpha <= beta violated");
        if (is_active(head_->r.timestamp, now_, t0_) && gen_x(*head_, beta, now_, t0_, src)) {
            result = head_->r;
        } else {
            result = sample_union(zeta_->buckets(), src);
        }
    }
    cached_ = CachedQuery{version_, result};
    return result;
}

TimestampSamplerWR::TimestampSamplerWR(std::uint64_t t0, std::uint64_t k) : k_(k) {
    require(k_ > 0, "TimestampSamplerWR: sample size must be positive");
    instances_.reserve(k_);
    for (std::uint64_t j = 0; j < k_; ++j) instances_.emplace_back(t0);
}

void TimestampSamplerWR::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    for (auto& inst : instances_) inst.observe(e, src);
    ++count_;
}

std::vector<StoredSample> TimestampSamplerWR::query_wr(RandomSource& src) {
    std::vector<StoredSample> out;
    out.reserve(k_);
    for (auto& inst : instances_) out.push_back(inst.query(src));
    return out;
}

std::size_t TimestampSamplerWR::bucket_count() const {
    std::size_t total = 0;
    for (const auto& inst : instances_) total += inst.bucket_count();
    return total;
}

TimestampSamplerWOR::TimestampSamplerWOR(std::uint64_t t0, std::uint64_t k) : t0_(t0), k_(k) {
    require(k_ > 0, "TimestampSamplerWOR: sample size must be positive");
    instances_.reserve(k_);
    for (std::uint64_t j = 0; j < k_; ++j) instances_.emplace_back(t0);
}

void TimestampSamplerWOR::observe(const Element& e, RandomSource& src) {
    require(e.index == count_, "observe: element index must equal arrivals so far");
    require(count_ == 0 || e.timestamp >= now_, "observe: timestamps must be non-decreasing");
    now_ = e.timestamp;
    ++count_;

    buffer_.push_back(e);
    if (buffer_.size() > k_) buffer_.pop_front();
    require(buffer_.size() <= k_, "observe: delay buffer overflow");

    // Instance i receives the element i arrivals back — the newest one it is
    // allowed to see. If that element is already dead, the instance's whole
    // cover is older still, so advance_time has just reset it; the dead
    // element is skipped rather than ingested.
    for (std::uint64_t i = 0; i < k_; ++i) {
        instances_[i].advance_time(now_);
        if (i >= buffer_.size()) continue;  // fewer than i+1 arrivals so far
        const Element& released = buffer_[buffer_.size() - 1 - i];
        if (is_active(released.timestamp, now_, t0_)) {
            instances_[i].ingest(released, src);
        } else {
            require(instances_[i].empty(), "observe: live cover older than a dead release");
        }
    }
}

std::vector<StoredSample> TimestampSamplerWOR::query_wor(RandomSource& src) {
    if (count_ == 0 || !is_active(buffer_.back().timestamp, now_, t0_)) {
        throw EmptyWindowError("query: timestamp window is empty");
    }

    // The deepest instance is empty exactly when the window holds at most
    // k-1 elements; those all sit in the delay buffer, so return them whole.
    if (instances_[k_ - 1].empty()) {
        std::vector<StoredSample> out;
        for (const auto& e : buffer_) {
            if (is_active(e.timestamp, now_, t0_)) out.push_back(to_stored(e));
        }
        return out;
    }

    // Fold from the most-delayed instance (smallest domain) to the least:
    // adding one domain element and one independent uniform point per step
    // keeps the set a uniform subset, one element larger each time.
    std::vector<StoredSample> picked;
    picked.reserve(k_);
    picked.push_back(instances_[k_ - 1].query(src));
    for (std::uint64_t j = k_ - 1; j-- > 0;) {
        const StoredSample candidate = instances_[j].query(src);
        const bool duplicate =
            std::any_of(picked.begin(), picked.end(),
                        [&](const StoredSample& s) { return s.index == candidate.index; });
        if (duplicate) {
            // The newest element instance j may see is withheld from every
            // deeper instance, so it is always a fresh addition.
            picked.push_back(to_stored(buffer_[buffer_.size() - 1 - j]));
        } else {
            picked.push_back(candidate);
        }
    }
    std::sort(picked.begin(), picked.end(),
              [](const StoredSample& a, const StoredSample& b) { return a.index < b.index; });
    return picked;
}

std::size_t TimestampSamplerWOR::bucket_count() const {
    std::size_t total = 0;
    for (const auto& inst : instances_) total += inst.bucket_count();
    return total;
}

std::vector<std::uint64_t> compose_ranks(std::vector<std::uint64_t> subset, std::uint64_t point,
                                         std::uint64_t domain) {
    require(domain >= subset.size() + 1, "compose: domain too small");
    require(point >= 1 && point <= domain, "compose: point outside domain");
    for (const auto r : subset) require(r >= 1 && r < domain, "compose: subset outside [1, domain)");
    const bool duplicate = std::find(subset.begin(), subset.end(), point) != subset.end();
    subset.push_back(duplicate ? domain : point);
    std::sort(subset.begin(), subset.end());
    return subset;
}

}  // namespace sws
