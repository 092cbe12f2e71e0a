#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>

#include "sws/types.hpp"

namespace sws::io {

// Malformed input: carries the 1-based line number for the diagnostic.
struct DataError : std::runtime_error {
    DataError(std::uint64_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    std::uint64_t line_number;
};

enum class Format { csv, ndjson };

// Reads a stream of elements. CSV rows are "timestamp,value"; when
// timestamps are optional (sequence windows) a row may be just "value" and
// the arrival index doubles as its timestamp. NDJSON rows are objects
// {"t": <int>, "v": <scalar>}, "t" optional under the same rule. Timestamps
// must be non-negative integers and non-decreasing; violations raise
// DataError with the offending line.
class StreamReader {
public:
    StreamReader(std::istream& in, Format format, bool timestamp_required)
        : in_(in), format_(format), timestamp_required_(timestamp_required) {}

    // Next element, or nullopt at end of input. Blank lines are skipped.
    std::optional<Element> next();

    std::uint64_t elements_read() const { return index_; }

private:
    Element parse_csv(const std::string& line);
    Element parse_ndjson(const std::string& line);

    std::istream& in_;
    Format format_;
    bool timestamp_required_;
    std::uint64_t index_ = 0;
    std::uint64_t line_ = 0;
    std::uint64_t last_timestamp_ = 0;
};

std::optional<Format> parse_format(const std::string& name);

}  // namespace sws::io
