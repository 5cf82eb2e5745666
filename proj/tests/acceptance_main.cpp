#include <cstdio>

#include "gext/acceptance.hpp"

int main() {
    auto run = gext::run_acceptance([](const std::string& line) { std::printf("%s\n", line.c_str()); });
    int fails = 0;
    for (const auto& c : run.criteria) fails += c.pass ? 0 : 1;
    if (!run.coverage_ok) ++fails;
    std::printf("acceptance: %s (%d/%zu criteria, coverage %s)\n", run.all_pass ? "ALL PASS" : "FAILURES",
                static_cast<int>(run.criteria.size()) - fails + (run.coverage_ok ? 0 : 1), run.criteria.size(),
                run.coverage_ok ? "ok" : "incomplete");
    return fails == 0 ? 0 : 1;
}
