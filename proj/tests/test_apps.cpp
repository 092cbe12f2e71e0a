#include <doctest.h>

#include <string>
#include <vector>

#include "sws/fk_estimator.hpp"
#include "sws/verify/oracle.hpp"
#include "sws/verify/rational.hpp"

using namespace sws;
using namespace sws::verify;

namespace {

Element val(std::uint64_t i, const std::string& v) { return Element{i, i, v}; }

}  // namespace

TEST_CASE("all-distinct windows give the exact moment deterministically") {
    // Every candidate's value occurs once from it onward, so the estimate is
    // window * (1^k - 0^k) = window = F_k, whatever the randomness does.
    SeededSource src(31);
    FkEstimator est(4, 3, 2);
    for (std::uint64_t i = 0; i < 12; ++i) {
        est.observe(val(i, "v" + std::to_string(i)), src);
        const auto ratio = est.fk_query();
        CHECK(ratio.den == 2);
        CHECK(static_cast<std::uint64_t>(ratio.num) == 2 * est.window_size());
        CHECK(est.instance_estimate(0) == est.window_size());
    }
}

TEST_CASE("all-equal windows keep the estimate within its exact range") {
    // With one distinct value, c is the candidate's depth into the window:
    // estimates are w*(c^2-(c-1)^2) = w*(2c-1) for some c in [1, w].
    SeededSource src(33);
    FkEstimator est(5, 2, 1);
    for (std::uint64_t i = 0; i < 40; ++i) {
        est.observe(val(i, "x"), src);
        const std::uint64_t w = est.window_size();
        const std::uint64_t e0 = est.instance_estimate(0);
        CHECK(e0 % w == 0);
        const std::uint64_t contribution = e0 / w;
        CHECK(contribution % 2 == 1);                // 2c-1 is odd
        CHECK(contribution <= 2 * w - 1);            // c <= w
    }
}

TEST_CASE("estimator expectation equals the exact moment on a worked case") {
    // Stream "a b a b", n = 2: final window {a, b} has F_2 = 1 + 1 = 2.
    const auto dist = enumerate_distribution([](RandomSource& src) {
        FkEstimator est(2, 2, 1);
        est.observe(val(0, "a"), src);
        est.observe(val(1, "b"), src);
        est.observe(val(2, "a"), src);
        est.observe(val(3, "b"), src);
        return encode_index(est.instance_estimate(0));
    });
    Rational expectation;
    for (const auto& [key, p] : dist.outcomes) {
        expectation += p * Rational::of(std::stoll(key));
    }
    CHECK(expectation == Rational::of(2));
}

TEST_CASE("repeated-value window, exact expectation through a slide") {
    // Stream "a a b a a", n = 3: final window {b, a, a} has F_2 = 1 + 4 = 5.
    const auto dist = enumerate_distribution([](RandomSource& src) {
        FkEstimator est(3, 2, 1);
        const char* values[] = {"a", "a", "b", "a", "a"};
        for (std::uint64_t i = 0; i < 5; ++i) est.observe(val(i, values[i]), src);
        return encode_index(est.instance_estimate(0));
    });
    Rational expectation;
    for (const auto& [key, p] : dist.outcomes) {
        expectation += p * Rational::of(std::stoll(key));
    }
    CHECK(expectation == Rational::of(5));
}

TEST_CASE("instance average is the exact mean of instance estimates") {
    SeededSource src(35);
    FkEstimator est(8, 2, 5);
    for (std::uint64_t i = 0; i < 30; ++i) est.observe(val(i, i % 3 ? "a" : "b"), src);
    std::uint64_t sum = 0;
    for (std::size_t r = 0; r < 5; ++r) sum += est.instance_estimate(r);
    const auto ratio = est.fk_query();
    CHECK(static_cast<std::uint64_t>(ratio.num) == sum);
    CHECK(ratio.den == 5);
    CHECK(ratio.str() == std::to_string(sum) + "/5");
}

TEST_CASE("estimator contracts") {
    CHECK_THROWS_AS(FkEstimator(0, 2, 1), ContractViolation);
    CHECK_THROWS_AS(FkEstimator(4, 0, 1), ContractViolation);
    CHECK_THROWS_AS(FkEstimator(4, 2, 0), ContractViolation);
    SeededSource src(37);
    FkEstimator est(4, 2, 1);
    CHECK_THROWS_AS(est.instance_estimate(0), EmptyWindowError);  // nothing observed yet
    est.observe(val(0, "a"), src);
    CHECK_THROWS_AS(est.instance_estimate(1), ContractViolation);  // no such instance
}
