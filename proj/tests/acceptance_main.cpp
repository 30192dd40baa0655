// Acceptance gate: every criterion runs with pinned seeds and exact
// tolerances; one line per criterion, nonzero exit on any failure.
#include <cstdio>

#include "sumcover/verify.hpp"

int main() {
    int failures = 0;
    for (int id : sumcover::suite_criteria("all")) {
        sumcover::CriterionResult r = sumcover::run_criterion(id);
        if (r.pass) {
            std::printf("[PASS] criterion %2d (%9.1f ms): %s [%s]\n", r.id, r.ms,
                        r.name.c_str(), r.detail.c_str());
        } else {
            std::printf("[FAIL] %s:%d criterion %2d (%9.1f ms): %s :: %s\n",
                        __FILE__, __LINE__, r.id, r.ms, r.name.c_str(),
                        r.detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
