#pragma once

#include <string>
#include <vector>

namespace infeig::app {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    /// set when the criterion threw before finishing
    std::string error;
    /// known to be out of reach for this discretization; see `known_issue`
    bool expected_failure = false;
    std::string known_issue;

    bool pass() const;
};

/// Criteria 1-8.
std::vector<int> criterion_ids();
std::string criterion_title(int id);
CriterionResult run_criterion(int id);

/// "[PASS] 3 title (12.3 s)" plus the failing checks, on one line.
std::string format_line(const CriterionResult& r);
std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace infeig::app
