#include "sws/verify/audit.hpp"

namespace sws::verify {

MemoryAuditReport audit_memory(std::uint64_t steps,
                               const std::function<std::uint64_t(std::uint64_t)>& step,
                               const std::function<std::uint64_t(std::uint64_t)>& bound,
                               std::string unit) {
    MemoryAuditReport report;
    report.steps = steps;
    report.unit = std::move(unit);
    for (std::uint64_t i = 0; i < steps; ++i) {
        const std::uint64_t observed = step(i);
        const std::uint64_t ceiling = bound(i);
        if (observed > report.max_observed) report.max_observed = observed;
        if (ceiling > report.max_bound) report.max_bound = ceiling;
        if (observed > ceiling && report.pass) {
            report.pass = false;
            report.first_violation_step = i;
        }
    }
    return report;
}

}  // namespace sws::verify
