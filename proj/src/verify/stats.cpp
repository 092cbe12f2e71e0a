#include "sws/verify/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <numeric>

namespace sws::verify {

ChiSquareReport chi_square_uniform(const std::vector<std::uint64_t>& counts, double significance) {
    require(counts.size() >= 2, "chi_square: need at least two cells");
    require(significance > 0.0 && significance < 1.0, "chi_square: significance must be in (0,1)");
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    require(total >= 10 * counts.size(), "chi_square: need at least 10 draws per cell");

    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double statistic = 0.0;
    for (const auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        statistic += d * d / expected;
    }

    ChiSquareReport report;
    report.statistic = statistic;
    report.dof = counts.size() - 1;
    report.draws = total;
    report.significance = significance;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(report.dof));
    report.critical = boost::math::quantile(dist, 1.0 - significance);
    report.pass = statistic <= report.critical;
    return report;
}

}  // namespace sws::verify
