#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "sws/random.hpp"

namespace sws::verify {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt to_bigint(u128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) | static_cast<std::uint64_t>(v);
}

// Exact rational, always normalized (gcd 1, positive denominator). Backed by
// arbitrary-precision integers: enumeration multiplies one branch weight per
// decision along a path, so fixed-width words would overflow on deep paths.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    static Rational of(std::int64_t num, std::int64_t den = 1) { return {BigInt(num), BigInt(den)}; }
    static Rational of_u128(u128 num, u128 den) { return {to_bigint(num), to_bigint(den)}; }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        require(b.num_ != 0, "Rational: division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const { return num_.str() + "/" + den_.str(); }

private:
    void normalize() {
        require(den_ != 0, "Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_, den_;
};

}  // namespace sws::verify
