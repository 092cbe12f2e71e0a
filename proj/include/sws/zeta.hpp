#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "sws/random.hpp"
#include "sws/types.hpp"

namespace sws {

inline std::uint64_t floor_log2(std::uint64_t v) {
    require(v > 0, "floor_log2: zero");
    return std::uint64_t(std::bit_width(v)) - 1;
}

// One bucket over the contiguous index range [x, y): the timestamp of its
// first element plus two independent uniform samples of its contents. R
// answers queries; Q is reserved for the boundary-probe draw, so using one
// never biases the other.
struct BucketStructure {
    std::uint64_t x = 0, y = 0;
    std::uint64_t t_start = 0;  // timestamp of the element with index x
    StoredSample r, q;

    std::uint64_t width() const { return y - x; }

    static BucketStructure singleton(const Element& e) {
        return {e.index, e.index + 1, e.timestamp, to_stored(e), to_stored(e)};
    }
};

// Result of cutting a decomposition at the expiry boundary.
struct SplitResult {
    enum Kind {
        all_active,   // first element still active: nothing to cut
        all_expired,  // newest element already expired: the whole cover is dead
        straddle,     // exactly one bucket starts expired and ends active
    } kind;
    BucketStructure head;  // the straddling bucket (valid only for straddle)
};

// Ordered buckets covering a contiguous index range [start, end), widths
// shrinking geometrically, the final bucket always a singleton holding the
// newest element. Holds at most 2*floor(log2(span)) + 1 buckets.
class ZetaDecomposition {
public:
    static ZetaDecomposition start_at(const Element& e) {
        ZetaDecomposition z;
        z.buckets_.push_back(BucketStructure::singleton(e));
        return z;
    }

    // Extends the cover by the next element. Requires e.index == end().
    // Returns the number of buckets touched (walked, merged, or appended);
    // the count is O(log span).
    std::uint64_t incr(const Element& e, RandomSource& src);

    // Cuts at the expiry boundary for the given clock and horizon, locating
    // the straddling bucket by scanning stored start timestamps. On a
    // straddle the head is moved out, buckets strictly before it are
    // discarded for good, and this decomposition keeps the all-active tail.
    SplitResult split_at_expiry(std::uint64_t now, std::uint64_t t0);

    std::uint64_t start() const { return buckets_.front().x; }
    std::uint64_t end() const { return buckets_.back().y; }
    std::uint64_t span() const { return end() - start(); }
    std::size_t bucket_count() const { return buckets_.size(); }
    const std::vector<BucketStructure>& buckets() const { return buckets_; }

private:
    std::vector<BucketStructure> buckets_;
};

// Uniform sample over the union of the given buckets: bucket picked with
// probability proportional to width, then its stored R sample returned.
StoredSample sample_union(const std::vector<BucketStructure>& buckets, RandomSource& src);

}  // namespace sws
