#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "sws/random.hpp"
#include "sws/types.hpp"
#include "sws/zeta.hpp"

namespace sws {

// Samplers over the window of elements younger than t0 ticks, using constant
// words per retained element group. A single instance keeps one of two shapes:
//
//   case 1: a decomposition covering exactly the active elements;
//   case 2: a head bucket B(y, z) that straddles the expiry boundary (its
//           first element is expired, how many others are is unknown) plus a
//           decomposition covering the all-active indexes [z, ..].
//
// In case 2 the width alpha = z - y never exceeds beta, the tail cover size.
// Queries combine the head's stored sample with a tail sample at odds that
// come out uniform over the true window without ever learning the number of
// active head elements.

// Outcome of the boundary probe: an element known by index and timestamp
// only (the payload is irrelevant — the probe is tested for expiry, never
// returned to callers).
struct ProbeSample {
    std::uint64_t index = 0;
    std::uint64_t timestamp = 0;
};

// Draws the probe Y from the head bucket's stored Q sample: Q itself with a
// probability chosen so that, over Q's uniformity, P(Y = i-th newest head
// element) = beta/((beta+i)(beta+i-1)) for 0 < i < alpha and the remaining
// mass falls on the head's first element. Only the single success-odds draw
// indexed by Q is made.
ProbeSample gen_y(const BucketStructure& head, std::uint64_t beta, RandomSource& src);

// True with probability exactly alpha/(beta+gamma), where gamma — the number
// of still-active head elements — is never computed: the probe's expiry
// state stands in for it. Requires alpha <= beta.
bool gen_x(const BucketStructure& head, std::uint64_t beta, std::uint64_t now, std::uint64_t t0,
           RandomSource& src);

// One uniform sample over a timestamp window.
class TimestampSampler {
public:
    explicit TimestampSampler(std::uint64_t t0) : t0_(t0) {
        require(t0_ > 0, "TimestampSampler: horizon must be positive");
    }

    // advance_time + ingest in one step, for streams observed directly.
    void observe(const Element& e, RandomSource& src);

    // Moves the clock forward (monotone) and retires what fell out of the
    // window: whole cover expired -> drop everything; boundary inside the
    // cover -> the straddling bucket becomes the head, older buckets and any
    // previous head are discarded.
    void advance_time(std::uint64_t now);

    // Adds the element to the cover; it must extend the cover contiguously
    // and still be active at the current clock (delayed feeders skip dead
    // elements instead).
    void ingest(const Element& e, RandomSource& src);

    // Uniform over the active elements. The draw is made once per state and
    // pinned: repeated queries between observations return the same sample.
    StoredSample query(RandomSource& src);

    bool empty() const { return !zeta_.has_value(); }
    bool in_straddle_state() const { return head_.has_value(); }
    std::uint64_t now() const { return now_; }
    std::uint64_t horizon() const { return t0_; }
    std::size_t bucket_count() const {
        return (zeta_ ? zeta_->bucket_count() : 0) + (head_ ? 1 : 0);
    }
    const std::optional<BucketStructure>& head() const { return head_; }
    const std::optional<ZetaDecomposition>& decomposition() const { return zeta_; }

private:
    std::uint64_t t0_;
    std::uint64_t now_ = 0;
    bool started_ = false;
    std::optional<BucketStructure> head_;
    std::optional<ZetaDecomposition> zeta_;

    std::uint64_t version_ = 0;  // bumped on every state change; keys the query cache
    struct CachedQuery {
        std::uint64_t version;
        StoredSample sample;
    };
    std::optional<CachedQuery> cached_;
};

// k samples with replacement: k independent instances fed the same stream.
class TimestampSamplerWR {
public:
    TimestampSamplerWR(std::uint64_t t0, std::uint64_t k);

    void observe(const Element& e, RandomSource& src);
    std::vector<StoredSample> query_wr(RandomSource& src);

    std::uint64_t arrivals() const { return count_; }
    std::size_t bucket_count() const;
    const std::vector<TimestampSampler>& instances() const { return instances_; }

private:
    std::uint64_t k_;
    std::uint64_t count_ = 0;
    std::vector<TimestampSampler> instances_;
};

// k distinct samples: instance i withholds the i most recent arrivals, giving
// a uniform single sample over the window minus its i newest elements. The
// per-instance samples are then folded, oldest domain first, into a uniform
// k-subset; a shared buffer of the last k arrivals supplies the payloads the
// fold needs when it picks a withheld element.
class TimestampSamplerWOR {
public:
    TimestampSamplerWOR(std::uint64_t t0, std::uint64_t k);

    void observe(const Element& e, RandomSource& src);

    // Uniform over k-subsets of the active elements; the whole window when it
    // holds at most k elements.
    std::vector<StoredSample> query_wor(RandomSource& src);

    std::uint64_t arrivals() const { return count_; }
    std::size_t bucket_count() const;
    std::size_t buffer_size() const { return buffer_.size(); }
    const std::vector<TimestampSampler>& instances() const { return instances_; }

private:
    std::uint64_t t0_, k_;
    std::uint64_t count_ = 0;
    std::uint64_t now_ = 0;
    std::deque<Element> buffer_;  // the last min(arrivals, k) elements
    std::vector<TimestampSampler> instances_;
};

// Fold step shared by the sampler and its tests, in abstract rank space.
// Given a uniform a-subset of [1, b] and an independent uniform point of
// [1, b+1], returns a uniform (a+1)-subset of [1, b+1]: the point joins the
// subset unless already present, in which case b+1 joins instead. The step
// consumes no randomness of its own.
std::vector<std::uint64_t> compose_ranks(std::vector<std::uint64_t> subset, std::uint64_t point,
                                         std::uint64_t domain);

}  // namespace sws
