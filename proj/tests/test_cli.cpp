#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

// End-to-end tests against the real binary (path injected by the build).

namespace {

struct CommandResult {
    int status = -1;
    std::string output;
};

CommandResult run_command(const std::string& args) {
    const std::string command = std::string(SWSAMPLE_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
    const int rc = pclose(pipe);
    CommandResult result;
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.output = std::move(output);
    return result;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

std::vector<nlohmann::json> parse_lines(const std::string& output) {
    std::vector<nlohmann::json> records;
    std::size_t from = 0;
    while (from < output.size()) {
        auto to = output.find('\n', from);
        if (to == std::string::npos) to = output.size();
        const std::string line = output.substr(from, to - from);
        from = to + 1;
        if (line.empty()) continue;
        // Non-JSON lines (bench prints a human table after its records) are
        // skipped rather than failed on.
        auto parsed = nlohmann::json::parse(line, nullptr, false);
        if (!parsed.is_discarded()) records.push_back(std::move(parsed));
    }
    return records;
}

}  // namespace

TEST_CASE("same seed, same bytes") {
    write_file("cli_seq.csv", "a\nb\nc\nd\ne\nf\n");
    const std::string args =
        "sample --mode sequence -n 4 -k 2 --seed 7 --input cli_seq.csv";
    const auto first = run_command(args);
    const auto second = run_command(args);
    CHECK(first.status == 0);
    CHECK(first.output == second.output);
    CHECK_FALSE(first.output.empty());

    const auto records = parse_lines(first.output);
    REQUIRE(records.size() == 6);  // emit-every defaults to one record per arrival
    const auto& last = records.back();
    CHECK(last["N"] == 6);
    CHECK(last["window"] == 4);
    REQUIRE(last["samples"].size() == 2);
    for (const auto& s : last["samples"]) {
        CHECK(s["index"] >= 2);
        CHECK(s["index"] <= 5);
    }
    // Stable field order, fit for byte-level diffing.
    CHECK(first.output.rfind("{\"t\":", 0) == 0);
}

TEST_CASE("timestamp mode tracks the active window") {
    write_file("cli_ts.csv", "0,a\n0,b\n1,c\n3,d\n");
    const auto result =
        run_command("sample --mode timestamp --t0 2 -k 1 --seed 5 --input cli_ts.csv");
    CHECK(result.status == 0);
    const auto records = parse_lines(result.output);
    REQUIRE(records.size() == 4);
    CHECK(records[2]["window"] == 3);  // ticks 0 and 1 both inside t0 = 2
    const auto& last = records.back();
    CHECK(last["t"] == 3);
    CHECK(last["window"] == 1);  // everything but the newest element expired
    CHECK(last["samples"][0]["value"] == "d");
}

TEST_CASE("emit cadence decouples from arrivals") {
    write_file("cli_six.csv", "a\nb\nc\nd\ne\nf\n");
    const auto result = run_command(
        "sample --mode sequence -n 3 --seed 11 --emit-every 3 --input cli_six.csv");
    CHECK(result.status == 0);
    const auto records = parse_lines(result.output);
    REQUIRE(records.size() == 2);
    CHECK(records[0]["N"] == 3);
    CHECK(records[1]["N"] == 6);
}

TEST_CASE("distinct samples arrive sorted and unique") {
    write_file("cli_wor.csv", "a\nb\nc\nd\ne\nf\ng\nh\n");
    const auto result = run_command(
        "sample --mode sequence --replacement without -n 5 -k 3 --seed 13 --input cli_wor.csv");
    CHECK(result.status == 0);
    for (const auto& record : parse_lines(result.output)) {
        const auto& samples = record["samples"];
        for (std::size_t i = 1; i < samples.size(); ++i) {
            CHECK(samples[i - 1]["index"] < samples[i]["index"]);
        }
    }
}

TEST_CASE("ndjson input round-trips") {
    write_file("cli_rows.ndjson",
               "{\"t\": 0, \"v\": \"a\"}\n{\"t\": 1, \"v\": 2.5}\n{\"t\": 1, \"v\": true}\n");
    const auto result = run_command(
        "sample --mode timestamp --t0 3 -k 1 --seed 17 --input cli_rows.ndjson --format ndjson");
    CHECK(result.status == 0);
    const auto records = parse_lines(result.output);
    REQUIRE(records.size() == 3);
    CHECK(records[2]["window"] == 3);
}

TEST_CASE("data errors exit with code 2") {
    SUBCASE("missing timestamp in timestamp mode") {
        write_file("cli_bad1.csv", "0,a\njustvalue\n");
        CHECK(run_command("sample --mode timestamp --t0 2 -k 1 --seed 1 --input cli_bad1.csv")
                  .status == 2);
    }
    SUBCASE("decreasing timestamps") {
        write_file("cli_bad2.csv", "5,a\n4,b\n");
        CHECK(run_command("sample --mode timestamp --t0 2 -k 1 --seed 1 --input cli_bad2.csv")
                  .status == 2);
    }
    SUBCASE("unreadable input file") {
        CHECK(run_command("sample --mode sequence -n 2 -k 1 --seed 1 --input does_not_exist.csv")
                  .status == 2);
    }
}

TEST_CASE("usage errors exit with code 2") {
    write_file("cli_tiny.csv", "a\n");
    CHECK(run_command("sample --mode sequence -n 2 -k 1 --input cli_tiny.csv").status == 2);
    CHECK(run_command("sample --mode sequence --t0 4 -k 1 --seed 1 --input cli_tiny.csv").status ==
          2);
    CHECK(run_command("sample --mode nowhere -n 2 -k 1 --seed 1 --input cli_tiny.csv").status == 2);
    CHECK(run_command("verify no_such_suite").status == 2);
    CHECK(run_command("frobnicate").status == 2);
}

TEST_CASE("verify emits one json line per check and exits zero on success") {
    const auto result = run_command("verify independence");
    CHECK(result.status == 0);
    const auto records = parse_lines(result.output);
    REQUIRE(records.size() >= 2);
    for (const auto& record : records) {
        CHECK(record["suite"] == "independence");
        CHECK(record["pass"] == true);
        CHECK(record.contains("seconds"));
    }
}

TEST_CASE("bench reports state rows and the bias experiment") {
    const auto result = run_command("bench -n 16 --elements 4000 --trials 1500 --seed 19");
    CHECK(result.status == 0);
    bool wr_row_seen = false;
    for (const auto& record : parse_lines(result.output)) {
        if (!record.is_object() || !record.contains("experiment")) continue;
        if (record["experiment"] == "state" && record["sampler"] == "last-n wr") {
            wr_row_seen = true;
            CHECK(record["max_state"] == 2);
        }
    }
    CHECK(wr_row_seen);
}

TEST_CASE("fk streams exact-on-distinct estimates") {
    write_file("cli_fk.csv", "a\nb\nc\nd\ne\n");
    const auto result =
        run_command("fk -n 4 -k 2 -r 3 --seed 23 --exact --emit-every 5 --input cli_fk.csv");
    CHECK(result.status == 0);
    const auto records = parse_lines(result.output);
    REQUIRE(records.size() == 1);
    CHECK(records[0]["window"] == 4);
    CHECK(records[0]["estimate"] == 4.0);  // all-distinct windows are exact
    CHECK(records[0]["exact"] == 4.0);
}

TEST_CASE("stdin is the default input") {
    write_file("cli_pipe.csv", "0,a\n1,b\n");
    const std::string command = std::string("cat cli_pipe.csv | ") + SWSAMPLE_BIN +
                                " sample --mode timestamp --t0 5 -k 1 --seed 29";
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[1024];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
    const int rc = pclose(pipe);
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(parse_lines(output).size() == 2);
}
