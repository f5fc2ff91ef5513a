#pragma once

#include <string>
#include <vector>

#include "lupe/stepper.hpp"

namespace lupe {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0;  // residual or indicator value
    std::string detail;
};

/// Structural invariant suite for a configured run: projector identities,
/// divergence bounds, lid conditions, fluctuation-dissipation balance,
/// orthogonal energy split, and the noise regime indicators. Informational
/// entries (regime detection) always pass but report their value.
std::vector<CheckResult> run_checks(const SimConfig& cfg);

/// True when every non-informational check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace lupe
