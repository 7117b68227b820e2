#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shellmin {

// One acceptance criterion outcome. detail carries the measured quantities
// that justify the verdict; seconds is wall time for the criterion.
struct CriterionResult {
    int index;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

// Runs the full acceptance suite, streaming one line per criterion to log.
// Criteria keep running after a failure so the report is always complete.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace shellmin
