#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gext/report.hpp"

namespace gext {

struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

struct AcceptanceRun {
    std::vector<CriterionResult> criteria;
    std::set<std::string> operations_covered;
    bool coverage_ok = false;
    std::vector<std::string> coverage_missing;
    bool all_pass = false;
};

// Runs the full acceptance suite. `echo` receives one line per criterion as
// it completes (pass/fail + detail); pass nullptr to run silently.
AcceptanceRun run_acceptance(const std::function<void(const std::string&)>& echo);

void acceptance_report(const AcceptanceRun& run, Report& rep);

}  // namespace gext
