#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sws/random.hpp"
#include "sws/verify/rational.hpp"

namespace sws::verify {

// Exact probability distribution over string-encoded outcomes. Produced by
// enumerating every branch of a randomized procedure; probabilities are
// exact rationals and must sum to exactly one.
struct ExactDistribution {
    std::map<std::string, Rational> outcomes;

    Rational total() const {
        Rational t;
        for (const auto& [k, p] : outcomes) t += p;
        return t;
    }

    Rational probability_of(const std::string& key) const {
        auto it = outcomes.find(key);
        return it == outcomes.end() ? Rational() : it->second;
    }

    // True when every outcome in `domain` has probability exactly `each`
    // and nothing outside `domain` has positive probability.
    bool is_uniform_over(const std::vector<std::string>& domain, const Rational& each) const;
};

struct EnumerationBudget {
    std::uint64_t max_paths = 1'000'000;
};

// A randomized procedure under test: consumes randomness, returns an outcome
// key. Must be a pure function of the draws (fresh state per invocation).
using Script = std::function<std::string(RandomSource&)>;

// RandomSource that, driven by enumerate_distribution, replays one root-to-
// leaf path of the procedure's decision tree per invocation. bernoulli is a
// two-way weighted branch rather than a den-way uniform one, which keeps the
// tree small without changing any outcome probability.
class EnumerationSource final : public RandomSource {
public:
    u128 uniform_index(u128 m) override;
    bool bernoulli(u128 num, u128 den) override;

    // Path probability of the run currently being replayed.
    Rational path_probability() const { return prob_; }

private:
    friend ExactDistribution enumerate_distribution(const Script&, const EnumerationBudget&);

    struct Decision {
        bool coin = false;  // true: weighted two-way bernoulli; false: m-way uniform
        u128 m = 0;         // branch count for uniform nodes
        u128 num = 0, den = 0;
        u128 chosen = 0;    // branch taken in the current run (coin: 0 = true)
    };

    void begin_run();
    bool advance();  // step to the next unexplored path; false when exhausted
    Rational branch_weight(const Decision& d) const;

    std::vector<Decision> path_;
    std::size_t depth_ = 0;
    Rational prob_;
};

// Exhaustively explores the decision tree of `script`, weighting each leaf by
// its exact path probability. Throws BudgetExceeded once more than
// budget.max_paths leaves have been visited.
ExactDistribution enumerate_distribution(const Script& script,
                                         const EnumerationBudget& budget = {});

// True when a joint distribution over "left|right" keys factorizes exactly
// into the product of its two marginals — i.e. the components are independent.
bool independence_check(const ExactDistribution& joint);

// Canonical outcome encodings shared by scripts and expectations.
std::string encode_index(std::uint64_t i);
std::string encode_index_set(std::vector<std::uint64_t> indexes);  // sorted, comma-separated
std::string encode_pair(const std::string& left, const std::string& right);
std::string encode_bool(bool b);

}  // namespace sws::verify
