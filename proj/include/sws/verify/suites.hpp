#pragma once

#include <string>
#include <vector>

namespace sws::verify {

// One named check from a verification suite. `criterion` ties the check to
// the numbered entry of the acceptance checklist it backs (0 = none).
struct CheckResult {
    int criterion = 0;
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Suite names accepted by run_suite, in execution order:
// exact, independence, memory, statistical, bench, apps.
const std::vector<std::string>& suite_names();

std::vector<CheckResult> run_suite(const std::string& name);
std::vector<CheckResult> run_all_suites();

}  // namespace sws::verify
