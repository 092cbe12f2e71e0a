#include "sws/bench.hpp"

#include <chrono>
#include <functional>

#include "sws/baselines.hpp"
#include "sws/random.hpp"
#include "sws/sequence_sampler.hpp"
#include "sws/timestamp_sampler.hpp"
#include "sws/types.hpp"

namespace sws::bench {

namespace {

using Clock = std::chrono::steady_clock;

StateRow drive(const std::string& name, std::uint64_t elements,
               const std::function<std::uint64_t(const Element&)>& feed_and_measure) {
    StateRow row;
    row.sampler = name;
    row.elements = elements;
    long double state_sum = 0.0L;
    const auto begin = Clock::now();
    for (std::uint64_t i = 0; i < elements; ++i) {
        const std::uint64_t state = feed_and_measure(Element{i, i, {}});
        state_sum += static_cast<long double>(state);
        if (state > row.max_state) row.max_state = state;
    }
    const auto end = Clock::now();
    row.mean_state = static_cast<double>(state_sum / static_cast<long double>(elements));
    row.ns_per_element =
        static_cast<double>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count()) /
        static_cast<double>(elements);
    return row;
}

// Shared protocol for the conditioned-bias experiment; `run_trial` returns
// (age, keep) for one fresh seeded trial.
BiasReport conditioned_bias(const std::string& name, std::uint64_t n, std::uint64_t trials,
                            std::uint64_t seed,
                            const std::function<std::pair<std::uint64_t, bool>(SeededSource&)>& run_trial) {
    BiasReport report;
    report.sampler = name;
    report.trials = trials;
    report.age_counts.assign(n, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededSource src(seed + t);
        const auto [age, keep] = run_trial(src);
        require(age < n, "bias experiment: age outside the window");
        if (!keep) continue;
        ++report.kept_trials;
        ++report.age_counts[age];
    }
    const double newest = static_cast<double>(report.age_counts.front());
    const double oldest = static_cast<double>(report.age_counts.back());
    report.newest_to_oldest_ratio = oldest > 0.0 ? newest / oldest : 0.0;
    report.chi = verify::chi_square_uniform(report.age_counts, 0.01);
    return report;
}

}  // namespace

std::vector<StateRow> run_state_bench(std::uint64_t n, std::uint64_t elements, std::uint64_t seed) {
    std::vector<StateRow> rows;

    {
        SeededSource src(seed);
        SequenceSamplerWR sampler(n, 1);
        rows.push_back(drive("last-n wr", elements, [&](const Element& e) {
            sampler.observe(e, src);
            return sampler.stored_samples();
        }));
    }
    {
        SeededSource src(seed);
        SequenceSamplerWOR sampler(n, 1);
        rows.push_back(drive("last-n wor", elements, [&](const Element& e) {
            sampler.observe(e, src);
            return sampler.stored_samples();
        }));
    }
    {
        SeededSource src(seed);
        TimestampSampler sampler(n);  // one element per tick: same window, time-based
        rows.push_back(drive("last-ticks wr", elements, [&](const Element& e) {
            sampler.observe(e, src);
            return sampler.bucket_count();
        }));
    }
    {
        SeededSource src(seed);
        ChainSampler sampler(n);
        rows.push_back(drive("chain", elements, [&](const Element& e) {
            sampler.observe(e, src);
            return sampler.stored_samples();
        }));
    }
    {
        SeededSource src(seed);
        PrioritySampler sampler(n);
        rows.push_back(drive("priority", elements, [&](const Element& e) {
            sampler.observe(e, src);
            return sampler.stored_samples();
        }));
    }
    {
        SeededSource src(seed);
        PeriodicSampler sampler(n);
        rows.push_back(drive("periodic", elements, [&](const Element& e) {
            sampler.observe(e, src);
            return sampler.stored_samples();
        }));
    }
    return rows;
}

BiasReport chain_conditioned_bias(std::uint64_t n, std::uint64_t trials, std::uint64_t max_state,
                                  std::uint64_t seed) {
    const std::uint64_t arrivals = 3 * n;  // past warm-up, well into steady state
    return conditioned_bias("chain", n, trials, seed, [&](SeededSource& src) {
        ChainSampler sampler(n);
        for (std::uint64_t i = 0; i < arrivals; ++i) sampler.observe(Element{i, i, {}}, src);
        const std::uint64_t age = arrivals - 1 - sampler.query().index;
        return std::make_pair(age, sampler.stored_samples() <= max_state);
    });
}

BiasReport sequence_conditioned_bias(std::uint64_t n, std::uint64_t trials, std::uint64_t max_state,
                                     std::uint64_t seed) {
    const std::uint64_t arrivals = 3 * n;
    return conditioned_bias("last-n wr", n, trials, seed, [&](SeededSource& src) {
        SequenceSamplerWR sampler(n, 1);
        for (std::uint64_t i = 0; i < arrivals; ++i) sampler.observe(Element{i, i, {}}, src);
        const std::uint64_t age = arrivals - 1 - sampler.query_wr().front().index;
        return std::make_pair(age, sampler.stored_samples() <= max_state);
    });
}

}  // namespace sws::bench
