#include "sws/verify/oracle.hpp"

#include <algorithm>

namespace sws::verify {

bool ExactDistribution::is_uniform_over(const std::vector<std::string>& domain,
                                        const Rational& each) const {
    if (outcomes.size() != domain.size()) return false;
    for (const auto& key : domain) {
        if (probability_of(key) != each) return false;
    }
    return true;
}

void EnumerationSource::begin_run() {
    depth_ = 0;
    prob_ = Rational::of(1);
}

Rational EnumerationSource::branch_weight(const Decision& d) const {
    if (!d.coin) return Rational::of(1) / Rational::of_u128(d.m, 1);
    return d.chosen == 0 ? Rational::of_u128(d.num, d.den)
                         : Rational::of_u128(d.den - d.num, d.den);
}

u128 EnumerationSource::uniform_index(u128 m) {
    require(m > 0, "uniform_index: empty range");
    if (m == 1) return 0;
    if (depth_ < path_.size()) {
        Decision& d = path_[depth_];
        require(!d.coin && d.m == m, "enumeration: script draws depend on more than its randomness");
        prob_ *= branch_weight(d);
        ++depth_;
        return d.chosen;
    }
    Decision d;
    d.coin = false;
    d.m = m;
    d.chosen = 0;
    path_.push_back(d);
    prob_ *= branch_weight(d);
    ++depth_;
    return 0;
}

bool EnumerationSource::bernoulli(u128 num, u128 den) {
    require(den > 0, "bernoulli: zero denominator");
    require(num <= den, "bernoulli: probability above one");
    if (num == 0) return false;
    if (num == den) return true;
    if (depth_ < path_.size()) {
        Decision& d = path_[depth_];
        require(d.coin && d.num == num && d.den == den,
                "enumeration: script draws depend on more than its randomness");
        prob_ *= branch_weight(d);
        ++depth_;
        return d.chosen == 0;
    }
    Decision d;
    d.coin = true;
    d.num = num;
    d.den = den;
    d.chosen = 0;
    path_.push_back(d);
    prob_ *= branch_weight(d);
    ++depth_;
    return true;
}

bool EnumerationSource::advance() {
    path_.resize(depth_);  // drop decisions the last run never reached
    while (!path_.empty()) {
        Decision& last = path_.back();
        const u128 branches = last.coin ? 2 : last.m;
        if (last.chosen + 1 < branches) {
            ++last.chosen;
            return true;
        }
        path_.pop_back();
    }
    return false;
}

ExactDistribution enumerate_distribution(const Script& script, const EnumerationBudget& budget) {
    ExactDistribution dist;
    EnumerationSource src;
    std::uint64_t leaves = 0;
    for (;;) {
        src.begin_run();
        const std::string key = script(src);
        if (++leaves > budget.max_paths) {
            throw BudgetExceeded("enumeration: decision tree exceeds " +
                                 std::to_string(budget.max_paths) + " paths");
        }
        dist.outcomes[key] += src.path_probability();
        if (!src.advance()) break;
    }
    return dist;
}

bool independence_check(const ExactDistribution& joint) {
    ExactDistribution left, right;
    for (const auto& [key, p] : joint.outcomes) {
        const auto sep = key.find('|');
        require(sep != std::string::npos, "independence_check: outcomes must be pairs");
        left.outcomes[key.substr(0, sep)] += p;
        right.outcomes[key.substr(sep + 1)] += p;
    }
    for (const auto& [lk, lp] : left.outcomes) {
        for (const auto& [rk, rp] : right.outcomes) {
            if (joint.probability_of(lk + "|" + rk) != lp * rp) return false;
        }
    }
    return true;
}

std::string encode_index(std::uint64_t i) { return std::to_string(i); }

std::string encode_index_set(std::vector<std::uint64_t> indexes) {
    std::sort(indexes.begin(), indexes.end());
    std::string out;
    for (std::size_t i = 0; i < indexes.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(indexes[i]);
    }
    return out;
}

std::string encode_pair(const std::string& left, const std::string& right) {
    require(left.find('|') == std::string::npos, "encode_pair: left key must not contain '|'");
    return left + "|" + right;
}

std::string encode_bool(bool b) { return b ? "1" : "0"; }

}  // namespace sws::verify
