#include "sws/io.hpp"

#include <nlohmann/json.hpp>

namespace sws::io {

namespace {

bool parse_u64(const std::string& text, std::uint64_t& out) {
    if (text.empty()) return false;
    out = 0;
    for (const char c : text) {
        if (c < '0' || c > '9') return false;
        if (out > (UINT64_MAX - std::uint64_t(c - '0')) / 10) return false;
        out = out * 10 + std::uint64_t(c - '0');
    }
    return true;
}

}  // namespace

std::optional<Format> parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "ndjson") return Format::ndjson;
    return std::nullopt;
}

std::optional<Element> StreamReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        Element e = format_ == Format::csv ? parse_csv(line) : parse_ndjson(line);
        e.index = index_;
        if (index_ > 0 && e.timestamp < last_timestamp_) {
            throw DataError(line_, "timestamp decreases (" + std::to_string(e.timestamp) +
                                       " after " + std::to_string(last_timestamp_) + ")");
        }
        last_timestamp_ = e.timestamp;
        ++index_;
        return e;
    }
    return std::nullopt;
}

Element StreamReader::parse_csv(const std::string& line) {
    Element e;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
        if (timestamp_required_) {
            throw DataError(line_, "expected \"timestamp,value\", got no comma");
        }
        e.timestamp = index_;
        e.value = line;
        return e;
    }
    const std::string ts_text = line.substr(0, comma);
    if (!parse_u64(ts_text, e.timestamp)) {
        throw DataError(line_, "timestamp is not a non-negative integer: \"" + ts_text + "\"");
    }
    e.value = line.substr(comma + 1);
    return e;
}

Element StreamReader::parse_ndjson(const std::string& line) {
    nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
        throw DataError(line_, "not a JSON object");
    }
    Element e;
    if (row.contains("t")) {
        if (!row["t"].is_number_unsigned()) {
            throw DataError(line_, "\"t\" is not a non-negative integer");
        }
        e.timestamp = row["t"].get<std::uint64_t>();
    } else if (timestamp_required_) {
        throw DataError(line_, "missing \"t\" field");
    } else {
        e.timestamp = index_;
    }
    if (!row.contains("v")) throw DataError(line_, "missing \"v\" field");
    const auto& v = row["v"];
    if (v.is_string()) {
        e.value = v.get<std::string>();
    } else if (v.is_number() || v.is_boolean()) {
        e.value = v.dump();
    } else {
        throw DataError(line_, "\"v\" must be a scalar");
    }
    return e;
}

}  // namespace sws::io
