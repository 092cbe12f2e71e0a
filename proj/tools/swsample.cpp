// swsample — uniform sampling over sliding windows, from the command line.
//
// Subcommands:
//   sample   stream elements in, emit NDJSON sample records out
//   verify   run the named verification suites, one JSON line per check
//   bench    state-size and conditioned-bias comparison against baselines
//   fk       streaming frequency-moment estimates over a last-n window
//
// Exit codes: 0 success, 1 check failure, 2 usage or data error.
// S3_LOG=1 enables progress logging on stderr.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sws/bench.hpp"
#include "sws/fk_estimator.hpp"
#include "sws/io.hpp"
#include "sws/random.hpp"
#include "sws/sequence_sampler.hpp"
#include "sws/timestamp_sampler.hpp"
#include "sws/types.hpp"
#include "sws/verify/suites.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

bool log_enabled() {
    const char* v = std::getenv("S3_LOG");
    return v != nullptr && v[0] != '\0' && !(v[0] == '0' && v[1] == '\0');
}

// Input selection shared by `sample` and `fk`.
struct InputConfig {
    std::string path = "-";
    std::string format = "csv";
};

void add_input_options(CLI::App& cmd, InputConfig& input) {
    cmd.add_option("--input", input.path, "input file, or - for stdin")->capture_default_str();
    cmd.add_option("--format", input.format, "input format")
        ->check(CLI::IsMember({"csv", "ndjson"}))
        ->capture_default_str();
}

std::unique_ptr<std::istream> open_input(const InputConfig& input) {
    if (input.path == "-") return nullptr;  // caller falls back to std::cin
    auto file = std::make_unique<std::ifstream>(input.path);
    if (!*file) throw sws::io::DataError(0, "cannot open input file: " + input.path);
    return file;
}

// Exact active-window size for timestamp streams, tracked per distinct tick
// (the samplers themselves never learn this number; the report does).
class WindowCounter {
public:
    void add(std::uint64_t timestamp) {
        if (!per_tick_.empty() && per_tick_.back().first == timestamp) {
            ++per_tick_.back().second;
        } else {
            per_tick_.emplace_back(timestamp, 1);
        }
        ++active_;
    }
    void expire(std::uint64_t now, std::uint64_t t0) {
        while (!per_tick_.empty() && !sws::is_active(per_tick_.front().first, now, t0)) {
            active_ -= per_tick_.front().second;
            per_tick_.pop_front();
        }
    }
    std::uint64_t active() const { return active_; }

private:
    std::deque<std::pair<std::uint64_t, std::uint64_t>> per_tick_;
    std::uint64_t active_ = 0;
};

ordered_json sample_record(std::uint64_t t, std::uint64_t arrivals, std::uint64_t window,
                           const std::vector<sws::StoredSample>& samples) {
    ordered_json rec;
    rec["t"] = t;
    rec["N"] = arrivals;
    rec["window"] = window;
    ordered_json arr = ordered_json::array();
    for (const auto& s : samples) {
        ordered_json one;
        one["index"] = s.index;
        one["timestamp"] = s.timestamp;
        one["value"] = s.value;
        arr.push_back(std::move(one));
    }
    rec["samples"] = std::move(arr);
    return rec;
}

// ---------------------------------------------------------------------------
// sample

struct SampleConfig {
    std::string mode;
    std::string replacement = "with";
    std::uint64_t k = 1;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> t0;
    std::uint64_t seed = 0;
    std::uint64_t emit_every = 1;
    InputConfig input;
};

int run_sample(const SampleConfig& config) {
    const bool sequence = config.mode == "sequence";
    if (sequence && (!config.n || config.t0)) {
        std::cerr << "error: sequence mode takes -n and not --t0\n";
        return 2;
    }
    if (!sequence && (!config.t0 || config.n)) {
        std::cerr << "error: timestamp mode takes --t0 and not -n\n";
        return 2;
    }
    const bool with_replacement = config.replacement == "with";

    const auto file = open_input(config.input);
    std::istream& in = file ? *file : std::cin;
    const auto format = *sws::io::parse_format(config.input.format);
    sws::io::StreamReader reader(in, format, /*timestamp_required=*/!sequence);

    sws::SeededSource src(config.seed);
    std::optional<sws::SequenceSamplerWR> seq_wr;
    std::optional<sws::SequenceSamplerWOR> seq_wor;
    std::optional<sws::TimestampSamplerWR> ts_wr;
    std::optional<sws::TimestampSamplerWOR> ts_wor;
    if (sequence && with_replacement) seq_wr.emplace(*config.n, config.k);
    if (sequence && !with_replacement) seq_wor.emplace(*config.n, config.k);
    if (!sequence && with_replacement) ts_wr.emplace(*config.t0, config.k);
    if (!sequence && !with_replacement) ts_wor.emplace(*config.t0, config.k);

    WindowCounter counter;
    std::uint64_t arrivals = 0;
    const bool logging = log_enabled();
    while (const auto e = reader.next()) {
        if (seq_wr) seq_wr->observe(*e, src);
        if (seq_wor) seq_wor->observe(*e, src);
        if (ts_wr) ts_wr->observe(*e, src);
        if (ts_wor) ts_wor->observe(*e, src);
        ++arrivals;
        if (!sequence) {
            counter.add(e->timestamp);
            counter.expire(e->timestamp, *config.t0);
        }
        if (logging && arrivals % 1'000'000 == 0) {
            std::cerr << "[sample] " << arrivals << " elements\n";
        }
        if (arrivals % config.emit_every != 0) continue;

        std::vector<sws::StoredSample> samples;
        if (seq_wr) samples = seq_wr->query_wr();
        if (seq_wor) samples = seq_wor->query_wor();
        if (ts_wr) samples = ts_wr->query_wr(src);
        if (ts_wor) samples = ts_wor->query_wor(src);
        const std::uint64_t window =
            sequence ? std::min(arrivals, *config.n) : counter.active();
        std::cout << sample_record(e->timestamp, arrivals, window, samples).dump() << '\n'
                  << std::flush;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::vector<std::string>& selectors) {
    const auto& known = sws::verify::suite_names();
    const std::vector<std::string>& suites = selectors.empty() ? known : selectors;
    bool all_pass = true;
    for (const auto& name : suites) {
        for (const auto& check : sws::verify::run_suite(name)) {
            ordered_json rec;
            rec["suite"] = check.suite;
            rec["name"] = check.name;
            rec["criterion"] = check.criterion;
            rec["pass"] = check.pass;
            rec["seconds"] = check.seconds;
            rec["detail"] = check.detail;
            std::cout << rec.dump() << '\n' << std::flush;
            all_pass = all_pass && check.pass;
        }
    }
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

struct BenchConfig {
    std::uint64_t n = 32;
    std::uint64_t elements = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t trials = 100'000;
    std::uint64_t max_state = 2;
};

ordered_json bias_record(const sws::bench::BiasReport& report) {
    ordered_json rec;
    rec["experiment"] = "conditioned-bias";
    rec["sampler"] = report.sampler;
    rec["trials"] = report.trials;
    rec["kept_trials"] = report.kept_trials;
    rec["newest_to_oldest_ratio"] = report.newest_to_oldest_ratio;
    rec["chi_square"] = report.chi.statistic;
    rec["critical"] = report.chi.critical;
    rec["uniform"] = report.chi.pass;
    return rec;
}

int run_bench(const BenchConfig& config) {
    const auto rows = sws::bench::run_state_bench(config.n, config.elements, config.seed);
    for (const auto& row : rows) {
        ordered_json rec;
        rec["experiment"] = "state";
        rec["sampler"] = row.sampler;
        rec["elements"] = row.elements;
        rec["max_state"] = row.max_state;
        rec["mean_state"] = row.mean_state;
        rec["ns_per_element"] = row.ns_per_element;
        std::cout << rec.dump() << '\n';
    }
    const auto chain =
        sws::bench::chain_conditioned_bias(config.n, config.trials, config.max_state, config.seed);
    const auto own = sws::bench::sequence_conditioned_bias(config.n, config.trials,
                                                           config.max_state, config.seed + 1);
    std::cout << bias_record(chain).dump() << '\n';
    std::cout << bias_record(own).dump() << '\n';

    std::cout << '\n'
              << std::left << std::setw(14) << "sampler" << std::right << std::setw(12)
              << "max_state" << std::setw(14) << "mean_state" << std::setw(12) << "ns/elem"
              << '\n';
    for (const auto& row : rows) {
        std::cout << std::left << std::setw(14) << row.sampler << std::right << std::setw(12)
                  << row.max_state << std::setw(14) << std::fixed << std::setprecision(3)
                  << row.mean_state << std::setw(12) << std::setprecision(1)
                  << row.ns_per_element << '\n';
    }
    std::cout << '\n'
              << "conditioned on state <= " << config.max_state << " after warmup:" << '\n'
              << std::left << std::setw(14) << "sampler" << std::right << std::setw(12) << "kept"
              << std::setw(14) << "chi_square" << std::setw(12) << "uniform" << std::setw(16)
              << "newest/oldest" << '\n';
    for (const auto& report : {chain, own}) {
        std::cout << std::left << std::setw(14) << report.sampler << std::right << std::setw(12)
                  << report.kept_trials << std::setw(14) << std::setprecision(1)
                  << report.chi.statistic << std::setw(12) << (report.chi.pass ? "yes" : "no")
                  << std::setw(16) << std::setprecision(3) << report.newest_to_oldest_ratio
                  << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------------------
// fk

struct FkConfig {
    std::uint64_t n = 0;
    std::uint64_t moment = 2;
    std::uint64_t instances = 100;
    std::uint64_t seed = 0;
    std::uint64_t emit_every = 1;
    bool exact = false;
    InputConfig input;
};

int run_fk(const FkConfig& config) {
    const auto file = open_input(config.input);
    std::istream& in = file ? *file : std::cin;
    const auto format = *sws::io::parse_format(config.input.format);
    sws::io::StreamReader reader(in, format, /*timestamp_required=*/false);

    sws::SeededSource src(config.seed);
    sws::FkEstimator estimator(config.n, config.moment, config.instances);
    std::deque<std::string> window;  // kept only for the optional exact column
    std::uint64_t arrivals = 0;
    while (const auto e = reader.next()) {
        estimator.observe(*e, src);
        ++arrivals;
        if (config.exact) {
            window.push_back(e->value);
            if (window.size() > config.n) window.pop_front();
        }
        if (arrivals % config.emit_every != 0) continue;

        const auto ratio = estimator.fk_query();
        ordered_json rec;
        rec["t"] = e->timestamp;
        rec["N"] = arrivals;
        rec["window"] = estimator.window_size();
        rec["estimate"] = ratio.to_double();
        rec["ratio"] = ratio.str();
        if (config.exact) {
            std::map<std::string, std::uint64_t> counts;
            for (const auto& v : window) ++counts[v];
            double truth = 0.0;
            for (const auto& [v, c] : counts) {
                double p = 1.0;
                for (std::uint64_t i = 0; i < config.moment; ++i) p *= static_cast<double>(c);
                truth += p;
            }
            rec["exact"] = truth;
        }
        std::cout << rec.dump() << '\n' << std::flush;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uniform sampling over sliding windows"};
    app.require_subcommand(1);

    SampleConfig sample;
    auto* cmd_sample = app.add_subcommand("sample", "stream elements, emit NDJSON sample records");
    cmd_sample->add_option("--mode", sample.mode, "window mode")
        ->required()
        ->check(CLI::IsMember({"sequence", "timestamp"}));
    cmd_sample->add_option("--replacement", sample.replacement, "with or without replacement")
        ->check(CLI::IsMember({"with", "without"}))
        ->capture_default_str();
    cmd_sample->add_option("-k,--samples", sample.k, "samples per query")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_sample->add_option("-n,--window", sample.n, "window size in elements (sequence mode)");
    cmd_sample->add_option("--t0,--horizon", sample.t0, "window length in ticks (timestamp mode)");
    cmd_sample->add_option("--seed", sample.seed, "random seed")->required();
    cmd_sample->add_option("--emit-every", sample.emit_every, "emit a record every E arrivals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_input_options(*cmd_sample, sample.input);

    std::vector<std::string> selectors;
    auto* cmd_verify = app.add_subcommand("verify", "run verification suites");
    cmd_verify->add_option("suites", selectors, "suites to run (default: all)")
        ->check(CLI::IsMember(sws::verify::suite_names()));

    BenchConfig bench;
    auto* cmd_bench = app.add_subcommand("bench", "state-size and bias comparison vs baselines");
    cmd_bench->add_option("-n,--window", bench.n, "window size")->capture_default_str();
    cmd_bench->add_option("--elements", bench.elements, "stream length")->capture_default_str();
    cmd_bench->add_option("--seed", bench.seed, "random seed")->required();
    cmd_bench->add_option("--trials", bench.trials, "bias-experiment trials")
        ->capture_default_str();
    cmd_bench->add_option("--max-state", bench.max_state, "bias-experiment state ceiling")
        ->capture_default_str();

    FkConfig fk;
    auto* cmd_fk = app.add_subcommand("fk", "streaming frequency-moment estimates");
    cmd_fk->add_option("-n,--window", fk.n, "window size in elements")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_fk->add_option("-k,--moment", fk.moment, "moment order")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_fk->add_option("-r,--instances", fk.instances, "independent estimator instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_fk->add_option("--seed", fk.seed, "random seed")->required();
    cmd_fk->add_option("--emit-every", fk.emit_every, "emit a record every E arrivals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_fk->add_flag("--exact", fk.exact, "also report the exact moment (buffers the window)");
    add_input_options(*cmd_fk, fk.input);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_sample->parsed()) return run_sample(sample);
        if (cmd_verify->parsed()) return run_verify(selectors);
        if (cmd_bench->parsed()) return run_bench(bench);
        if (cmd_fk->parsed()) return run_fk(fk);
    } catch (const sws::io::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sws::ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
