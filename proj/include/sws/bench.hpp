#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sws/verify/stats.hpp"

namespace sws::bench {

// One sampler driven over a synthetic stream: worst and mean state footprint
// (stored records for sequence samplers and baselines, buckets plus buffer
// for timestamp samplers) and wall time per element.
struct StateRow {
    std::string sampler;
    std::uint64_t elements = 0;
    std::uint64_t max_state = 0;
    double mean_state = 0.0;
    double ns_per_element = 0.0;
};

std::vector<StateRow> run_state_bench(std::uint64_t n, std::uint64_t elements, std::uint64_t seed);

// Conditioned-uniformity experiment: many independent trials, each running a
// fresh sampler over warmup arrivals and then querying once. Trials whose
// state footprint exceeds max_state at query time are discarded; the kept
// sample ages (0 = newest window element) are tested against uniformity.
// A sound sampler passes under any state-based conditioning it satisfies
// with certainty; chain sampling conditioned on a short chain does not.
struct BiasReport {
    std::string sampler;
    std::uint64_t trials = 0;
    std::uint64_t kept_trials = 0;
    std::vector<std::uint64_t> age_counts;
    double newest_to_oldest_ratio = 0.0;  // frequency of age 0 over age n-1
    verify::ChiSquareReport chi;
};

BiasReport chain_conditioned_bias(std::uint64_t n, std::uint64_t trials, std::uint64_t max_state,
                                  std::uint64_t seed);
BiasReport sequence_conditioned_bias(std::uint64_t n, std::uint64_t trials, std::uint64_t max_state,
                                     std::uint64_t seed);

}  // namespace sws::bench
