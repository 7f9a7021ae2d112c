#pragma once

// The thirteen build-acceptance checks, with tolerances and runtime budgets
// pinned in one place.  Shared by the standalone acceptance runner and the
// CLI's verify-all subcommand so both report the identical suite.

#include <json.hpp>
#include <string>
#include <vector>

namespace pseudospec {

struct CheckResult {
    std::string id;     // stable key, usable with run_check
    std::string label;  // one-line description of what is being certified
    bool pass = false;
    double error = 0.0;      // worst measured deviation (relative where stated)
    double tolerance = 0.0;  // pinned pass gate for `error`
    double seconds = 0.0;    // wall time of this check
    double time_limit = 0.0;  // pinned runtime budget (seconds)
    bool within_time = true;
    nlohmann::json detail;  // per-case numbers, curves, fitted exponents, ...
};

// the thirteen check ids in report order
const std::vector<std::string>& check_ids();

// run one check; throws std::invalid_argument for an unknown id
CheckResult run_check(const std::string& id);

// run the whole suite; threads > 1 spreads the independent checks over a
// worker pool (the results and their order do not depend on the thread count)
std::vector<CheckResult> run_all_checks(int threads = 1);

// deterministic machine-readable scorecard (no wall times; those go to logs)
nlohmann::json scorecard(const std::vector<CheckResult>& results);

}  // namespace pseudospec
