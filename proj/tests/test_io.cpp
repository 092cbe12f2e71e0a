#include <doctest.h>

#include <sstream>

#include "sws/io.hpp"

using namespace sws;
using io::DataError;
using io::Format;
using io::StreamReader;

TEST_CASE("csv rows parse into indexed elements") {
    std::istringstream in("3,alpha\n5,beta\n5,gamma\n");
    StreamReader reader(in, Format::csv, /*timestamp_required=*/true);
    auto e0 = reader.next();
    REQUIRE(e0);
    CHECK(e0->index == 0);
    CHECK(e0->timestamp == 3);
    CHECK(e0->value == "alpha");
    auto e1 = reader.next();
    REQUIRE(e1);
    CHECK(e1->index == 1);
    CHECK(e1->timestamp == 5);
    auto e2 = reader.next();
    REQUIRE(e2);
    CHECK(e2->value == "gamma");
    CHECK_FALSE(reader.next());
    CHECK(reader.elements_read() == 3);
}

TEST_CASE("bare csv values auto-assign the arrival index as timestamp") {
    std::istringstream in("alpha\nbeta\n");
    StreamReader reader(in, Format::csv, /*timestamp_required=*/false);
    auto e0 = reader.next();
    REQUIRE(e0);
    CHECK(e0->timestamp == 0);
    CHECK(e0->value == "alpha");
    auto e1 = reader.next();
    REQUIRE(e1);
    CHECK(e1->timestamp == 1);
}

TEST_CASE("blank lines and carriage returns are tolerated") {
    std::istringstream in("1,a\r\n\n2,b\r\n");
    StreamReader reader(in, Format::csv, true);
    CHECK(reader.next()->value == "a");
    auto e = reader.next();
    REQUIRE(e);
    CHECK(e->value == "b");
    CHECK_FALSE(reader.next());
}

TEST_CASE("csv errors carry the offending line number") {
    SUBCASE("missing timestamp when required") {
        std::istringstream in("1,a\njustvalue\n");
        StreamReader reader(in, Format::csv, true);
        reader.next();
        try {
            reader.next();
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.line_number == 2);
        }
    }
    SUBCASE("non-numeric timestamp") {
        std::istringstream in("x7,a\n");
        StreamReader reader(in, Format::csv, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
    SUBCASE("timestamp overflow") {
        std::istringstream in("99999999999999999999999999,a\n");
        StreamReader reader(in, Format::csv, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
    SUBCASE("decreasing timestamps") {
        std::istringstream in("5,a\n4,b\n");
        StreamReader reader(in, Format::csv, true);
        reader.next();
        try {
            reader.next();
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(e.line_number == 2);
        }
    }
}

TEST_CASE("ndjson rows parse strictly") {
    std::istringstream in(
        "{\"t\": 1, \"v\": \"a\"}\n"
        "{\"t\": 1, \"v\": 2.5}\n"
        "{\"t\": 2, \"v\": true}\n");
    StreamReader reader(in, Format::ndjson, true);
    auto e0 = reader.next();
    REQUIRE(e0);
    CHECK(e0->timestamp == 1);
    CHECK(e0->value == "a");
    auto e1 = reader.next();
    REQUIRE(e1);
    CHECK(e1->value == "2.5");
    auto e2 = reader.next();
    REQUIRE(e2);
    CHECK(e2->value == "true");
}

TEST_CASE("ndjson timestamps may be omitted only when optional") {
    std::istringstream optional_in("{\"v\": \"a\"}\n{\"v\": \"b\"}\n");
    StreamReader optional_reader(optional_in, Format::ndjson, false);
    CHECK(optional_reader.next()->timestamp == 0);
    CHECK(optional_reader.next()->timestamp == 1);

    std::istringstream required_in("{\"v\": \"a\"}\n");
    StreamReader required_reader(required_in, Format::ndjson, true);
    CHECK_THROWS_AS(required_reader.next(), DataError);
}

TEST_CASE("ndjson rejects malformed rows") {
    SUBCASE("broken json") {
        std::istringstream in("{oops\n");
        StreamReader reader(in, Format::ndjson, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
    SUBCASE("not an object") {
        std::istringstream in("[1,2]\n");
        StreamReader reader(in, Format::ndjson, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
    SUBCASE("missing value") {
        std::istringstream in("{\"t\": 3}\n");
        StreamReader reader(in, Format::ndjson, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
    SUBCASE("negative timestamp") {
        std::istringstream in("{\"t\": -1, \"v\": \"a\"}\n");
        StreamReader reader(in, Format::ndjson, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
    SUBCASE("non-scalar value") {
        std::istringstream in("{\"t\": 1, \"v\": [1]}\n");
        StreamReader reader(in, Format::ndjson, true);
        CHECK_THROWS_AS(reader.next(), DataError);
    }
}

TEST_CASE("format names parse") {
    CHECK(io::parse_format("csv") == Format::csv);
    CHECK(io::parse_format("ndjson") == Format::ndjson);
    CHECK_FALSE(io::parse_format("xml").has_value());
}
