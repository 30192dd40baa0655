#pragma once

#include <string>
#include <vector>

namespace sumcover {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // first failure context, or brief stats
    double ms = 0.0;
};

// Suites: all, theorem1, theorem2, theorem3, theorem5, appendix.
// Throws ValidationError on an unknown suite name.
std::vector<int> suite_criteria(const std::string& suite);

const char* criterion_name(int id);
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(const std::string& suite);

}  // namespace sumcover
