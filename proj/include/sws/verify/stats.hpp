#pragma once

#include <cstdint>
#include <vector>

#include "sws/types.hpp"

namespace sws::verify {

struct ChiSquareReport {
    double statistic = 0.0;
    double critical = 0.0;
    std::size_t dof = 0;
    std::uint64_t draws = 0;
    double significance = 0.0;
    bool pass = false;
};

// Pearson goodness-of-fit of the observed cell counts against the uniform
// distribution over the cells. Requires at least 10 expected observations
// per cell; the critical value is the chi-squared quantile at the given
// significance (callers apply any multiple-test correction to it).
ChiSquareReport chi_square_uniform(const std::vector<std::uint64_t>& counts,
                                   double significance = 0.01);

}  // namespace sws::verify
