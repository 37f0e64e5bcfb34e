#pragma once

#include <string>
#include <vector>

namespace nclt {

struct CriterionResult {
    std::string id; // AC1..AC8
    std::string title;
    bool passed = false;
    std::vector<std::string> details; // measured values, one per line
};

// Runs every acceptance criterion; property suites use a fixed seed.
std::vector<CriterionResult> run_acceptance();

} // namespace nclt
