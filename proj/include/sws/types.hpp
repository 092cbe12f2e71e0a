#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sws {

// A stream element. Indexes are assigned densely from 0 in arrival order;
// timestamps are integer ticks and must be non-decreasing along the stream.
// Multiple elements may share a timestamp (a burst).
struct Element {
    std::uint64_t index = 0;
    std::uint64_t timestamp = 0;
    std::string value;
};

// A retained element. Samplers keep the timestamp alongside index and payload
// so expiry of a stored sample can be decided without consulting the stream.
struct StoredSample {
    std::uint64_t index = 0;
    std::uint64_t timestamp = 0;
    std::string value;

    friend bool operator==(const StoredSample& a, const StoredSample& b) {
        return a.index == b.index && a.timestamp == b.timestamp && a.value == b.value;
    }
};

inline StoredSample to_stored(const Element& e) { return {e.index, e.timestamp, e.value}; }

// Window description: either the last n elements (sequence) or all elements
// younger than t0 ticks (timestamp).
enum class WindowMode { sequence, timestamp };

struct WindowSpec {
    WindowMode mode = WindowMode::sequence;
    std::uint64_t extent = 1;  // n for sequence windows, t0 for timestamp windows

    static WindowSpec last_n(std::uint64_t n) { return {WindowMode::sequence, n}; }
    static WindowSpec last_ticks(std::uint64_t t0) { return {WindowMode::timestamp, t0}; }
};

// A caller broke an operation's precondition (bad argument, out-of-order
// element, violated internal contract that is cheap enough to check always).
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// A query was made against a window that currently holds no elements.
struct EmptyWindowError : std::runtime_error {
    explicit EmptyWindowError(const std::string& what) : std::runtime_error(what) {}
};

// A verification routine exceeded its configured work budget. Loud by design:
// an exhaustive check that silently truncates would prove nothing.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const char* what) {
    if (!cond) throw ContractViolation(what);
}

// Strict expiry for timestamp windows: an element is active while
// now - timestamp < t0, i.e. it expires exactly t0 ticks after arrival.
inline bool is_active(std::uint64_t timestamp, std::uint64_t now, std::uint64_t t0) {
    require(now >= timestamp, "is_active: clock behind element timestamp");
    return now - timestamp < t0;
}

inline bool is_active(const StoredSample& s, std::uint64_t now, const WindowSpec& w) {
    require(w.mode == WindowMode::timestamp, "is_active: sequence windows expire by index, not time");
    return is_active(s.timestamp, now, w.extent);
}

}  // namespace sws
