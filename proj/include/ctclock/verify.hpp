#pragma once

#include "ctclock/types.hpp"

#include <string>
#include <vector>

namespace ctclock {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Fault injection for testing the suite itself: flips the sign of T at
/// (r, c) and (c, r), i.e. a sign error in the operator construction. The
/// indices must land inside the suite's working truncation (64).
struct VerifyOptions {
    bool mutate = false;
    Index mutate_r = 0;
    Index mutate_c = 0;
};

/// The full battery: CCR exactness, lattice taxonomy, closed forms vs matrix
/// oracle, clock readout, covariance near ticks, short-time order, Larmor
/// protocol, resolution formulas. Exceptions inside a check fail that check.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

std::string verification_json(const std::vector<CheckResult>& results);

} // namespace ctclock
