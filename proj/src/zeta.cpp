#include "sws/zeta.hpp"

namespace sws {

namespace {

// Merge two adjacent equal-width buckets. Keeping each stored sample from
// either constituent with probability 1/2 makes the merged R (and Q) uniform
// over the union; the two draws stay independent of each other.
BucketStructure merge_buckets(const BucketStructure& a, const BucketStructure& b,
                              RandomSource& src) {
    require(a.y == b.x, "merge: buckets must be adjacent");
    require(a.width() == b.width(), "merge: buckets must have equal width");
    BucketStructure out;
    out.x = a.x;
    out.y = b.y;
    out.t_start = a.t_start;
    out.r = src.bernoulli(1, 2) ? a.r : b.r;
    out.q = src.bernoulli(1, 2) ? a.q : b.q;
    return out;
}

}  // namespace

std::uint64_t ZetaDecomposition::incr(const Element& e, RandomSource& src) {
    require(!buckets_.empty(), "incr: empty decomposition");
    require(e.index == end(), "incr: element must extend the cover by one");

    const std::uint64_t b = end() - 1;  // index of the current newest element
    std::vector<BucketStructure> next;
    next.reserve(buckets_.size() + 1);
    std::uint64_t touched = 0;

    // Walk the prefix. At each level the remaining buckets form a complete
    // decomposition of [a, b]; when the widened span crosses a power of two
    // its first two buckets (provably equal-width) collapse into one.
    std::size_t pos = 0;
    while (pos + 1 < buckets_.size()) {
        const std::uint64_t a = buckets_[pos].x;
        if (floor_log2(b + 2 - a) == floor_log2(b + 1 - a)) {
            next.push_back(buckets_[pos]);
            pos += 1;
            touched += 1;
        } else {
            require(pos + 2 < buckets_.size(), "incr: merge reached the tail bucket");
            next.push_back(merge_buckets(buckets_[pos], buckets_[pos + 1], src));
            pos += 2;
            touched += 2;
        }
    }
    require(pos + 1 == buckets_.size(), "incr: walk must end at the tail bucket");
    next.push_back(buckets_[pos]);
    next.push_back(BucketStructure::singleton(e));
    touched += 2;

    buckets_ = std::move(next);
    return touched;
}

SplitResult ZetaDecomposition::split_at_expiry(std::uint64_t now, std::uint64_t t0) {
    require(!buckets_.empty(), "split: empty decomposition");
    if (is_active(buckets_.front().t_start, now, t0)) return {SplitResult::all_active, {}};
    if (!is_active(buckets_.back().t_start, now, t0)) return {SplitResult::all_expired, {}};

    // Timestamps are non-decreasing, so expiry of bucket starts is monotone:
    // exactly one bucket starts expired while its successor starts active.
    for (std::size_t i = 0; i + 1 < buckets_.size(); ++i) {
        if (!is_active(buckets_[i].t_start, now, t0) &&
            is_active(buckets_[i + 1].t_start, now, t0)) {
            SplitResult result{SplitResult::straddle, buckets_[i]};
            buckets_.erase(buckets_.begin(), buckets_.begin() + static_cast<std::ptrdiff_t>(i + 1));
            return result;
        }
    }
    throw ContractViolation("split: no straddling bucket (timestamps out of order?)");
}

StoredSample sample_union(const std::vector<BucketStructure>& buckets, RandomSource& src) {
    require(!buckets.empty(), "sample_union: no buckets");
    std::uint64_t remaining = 0;
    for (const auto& bucket : buckets) remaining += bucket.width();
    for (const auto& bucket : buckets) {
        if (src.bernoulli(bucket.width(), remaining)) return bucket.r;
        remaining -= bucket.width();
    }
    throw ContractViolation("sample_union: selection fell through");
}

}  // namespace sws
