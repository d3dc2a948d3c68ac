#pragma once

#include <string>
#include <vector>

#include "quartic/orbit.hpp"
#include "quartic/torsion.hpp"

namespace quartic::props {

struct CheckResult {
    std::string name;
    std::string status;  // "pass" | "fail" | "skip"
    std::string detail;
};

/// Runs the full property suite seeded at one point of the surface.
/// Samples are drawn from a small orbit of the seed; elliptic-curve
/// checks are restricted to samples of moderate height.
std::vector<CheckResult> run_suite(const Surface& s, const ProjPoint& seed);

/// True iff every non-skipped check passed.
bool all_passed(const std::vector<CheckResult>& results);

} // namespace quartic::props
