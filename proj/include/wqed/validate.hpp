#pragma once

#include <string>
#include <vector>

#include "wqed/types.hpp"

namespace wqed::validation {

struct CheckResult {
    std::string id;
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    std::string detail;
};

// The twelve acceptance checks, in order. Each check pins its tolerance in
// code; the returned detail carries the measured numbers.
std::vector<CheckResult> run_acceptance_suite();

// Additional model invariants exercised by `wqed validate` on top of the
// acceptance checks (mirror symmetry, passivity, two-level reduction,
// dark-state property, oracle residuals).
std::vector<CheckResult> run_invariant_suite();

// Formats one "PASS/FAIL" table line.
std::string format_result(const CheckResult& result);

}  // namespace wqed::validation
