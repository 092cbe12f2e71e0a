#include <doctest.h>

#include "sws/random.hpp"
#include "sws/types.hpp"
#include "sws/verify/oracle.hpp"
#include "sws/verify/rational.hpp"

using namespace sws;
using namespace sws::verify;

TEST_CASE("rationals normalize and compute exactly") {
    CHECK(Rational::of(2, 4) == Rational::of(1, 2));
    CHECK(Rational::of(1, 3) + Rational::of(1, 6) == Rational::of(1, 2));
    CHECK(Rational::of(2, 3) * Rational::of(3, 4) == Rational::of(1, 2));
    CHECK(Rational::of(1, 2) - Rational::of(1, 2) == Rational());
    CHECK(Rational::of(1, 3) / Rational::of(2, 3) == Rational::of(1, 2));
    CHECK(Rational::of(-2, -4) == Rational::of(1, 2));
    CHECK(Rational::of(1, -2) == Rational::of(-1, 2));
    CHECK(Rational::of(1, 3) < Rational::of(1, 2));
    CHECK(Rational::of(5, 10).str() == "1/2");
    CHECK(Rational::of(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(Rational::of(1, 2) / Rational(), ContractViolation);
    // Path products overflow fixed words; the backing integers must not.
    Rational tiny = Rational::of(1);
    for (int i = 0; i < 200; ++i) tiny *= Rational::of(1, 3);
    CHECK((tiny * Rational::of_u128(u128(1) << 100, 1)).is_zero() == false);
}

TEST_CASE("enumeration weights every leaf by its exact path probability") {
    const auto dist = enumerate_distribution([](RandomSource& src) {
        const auto first = static_cast<std::uint64_t>(src.uniform_index(2));
        const bool second = src.bernoulli(1, 3);
        return encode_pair(encode_index(first), encode_bool(second));
    });
    CHECK(dist.outcomes.size() == 4);
    CHECK(dist.probability_of("0|1") == Rational::of(1, 6));
    CHECK(dist.probability_of("1|0") == Rational::of(1, 3));
    CHECK(dist.total() == Rational::of(1));
}

TEST_CASE("enumeration explores branches the first run never reached") {
    // Branch-dependent draw depth: one arm draws again, the other stops.
    const auto dist = enumerate_distribution([](RandomSource& src) {
        if (src.bernoulli(1, 2)) return std::string("stop");
        return "go" + encode_index(static_cast<std::uint64_t>(src.uniform_index(3)));
    });
    CHECK(dist.outcomes.size() == 4);
    CHECK(dist.probability_of("stop") == Rational::of(1, 2));
    CHECK(dist.probability_of("go2") == Rational::of(1, 6));
    CHECK(dist.total() == Rational::of(1));
}

TEST_CASE("enumeration enforces its path budget") {
    CHECK_THROWS_AS(enumerate_distribution(
                        [](RandomSource& src) {
                            const auto a = src.uniform_index(100);
                            const auto b = src.uniform_index(100);
                            return encode_index(static_cast<std::uint64_t>(a * 100 + b));
                        },
                        EnumerationBudget{100}),
                    BudgetExceeded);
}

TEST_CASE("enumeration rejects scripts with hidden state") {
    // The second invocation asks for a different draw at the same depth, so
    // its outcome cannot be a function of the recorded randomness.
    int calls = 0;
    CHECK_THROWS_AS(enumerate_distribution([&calls](RandomSource& src) {
                        const auto m = static_cast<u128>(2 + (calls++ == 0 ? 0 : 1));
                        return encode_index(static_cast<std::uint64_t>(src.uniform_index(m)));
                    }),
                    ContractViolation);
}

TEST_CASE("uniformity check demands the exact domain and mass") {
    ExactDistribution dist;
    dist.outcomes["0"] = Rational::of(1, 2);
    dist.outcomes["1"] = Rational::of(1, 2);
    CHECK(dist.is_uniform_over({"0", "1"}, Rational::of(1, 2)));
    CHECK_FALSE(dist.is_uniform_over({"0", "1", "2"}, Rational::of(1, 3)));
    CHECK_FALSE(dist.is_uniform_over({"0", "2"}, Rational::of(1, 2)));
    dist.outcomes["1"] = Rational::of(1, 3);
    CHECK_FALSE(dist.is_uniform_over({"0", "1"}, Rational::of(1, 2)));
}

TEST_CASE("independence check accepts products and rejects couplings") {
    ExactDistribution product;
    product.outcomes["a|x"] = Rational::of(1, 6);
    product.outcomes["a|y"] = Rational::of(1, 3);
    product.outcomes["b|x"] = Rational::of(1, 9);
    product.outcomes["b|y"] = Rational::of(2, 9);
    product.outcomes["c|x"] = Rational::of(1, 18);
    product.outcomes["c|y"] = Rational::of(1, 9);
    CHECK(independence_check(product));

    // Perfectly coupled pair: both marginals uniform, joint nowhere near the
    // product (the zero cells are the give-away).
    ExactDistribution coupled;
    coupled.outcomes["a|x"] = Rational::of(1, 2);
    coupled.outcomes["b|y"] = Rational::of(1, 2);
    CHECK_FALSE(independence_check(coupled));
}

TEST_CASE("outcome encodings are canonical") {
    CHECK(encode_index(17) == "17");
    CHECK(encode_index_set({3, 1, 2}) == "1,2,3");
    CHECK(encode_index_set({}) == "");
    CHECK(encode_pair("l", "r") == "l|r");
    CHECK(encode_bool(true) == "1");
    CHECK_THROWS_AS(encode_pair("bad|left", "r"), ContractViolation);
}
