#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sws/types.hpp"
#include "sws/zeta.hpp"

namespace sws::verify {

struct MemoryAuditReport {
    std::uint64_t steps = 0;
    std::uint64_t max_observed = 0;  // worst per-step footprint, in the bound's unit
    std::uint64_t max_bound = 0;     // largest bound that applied at any step
    bool pass = true;
    std::uint64_t first_violation_step = 0;
    std::string unit;
};

// Drives `step` (observe one element, return the current footprint) against
// `bound` (the footprint ceiling valid at that step) for `steps` iterations,
// recording the worst case and the first violation if any.
MemoryAuditReport audit_memory(std::uint64_t steps,
                               const std::function<std::uint64_t(std::uint64_t)>& step,
                               const std::function<std::uint64_t(std::uint64_t)>& bound,
                               std::string unit);

// Ceiling for one timestamp-sampler instance whose cover currently spans
// `span` indexes: a logarithmic number of buckets plus one straddling head.
inline std::uint64_t instance_bucket_bound(std::uint64_t span) {
    return span == 0 ? 0 : 2 * floor_log2(span) + 2;
}

}  // namespace sws::verify
