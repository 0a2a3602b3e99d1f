#pragma once

#include <string>
#include <vector>

namespace diracnu {

// ---------------------------------------------------------------------------
// Self-contained invariant suite behind the CLI `verify` command.  Each check
// reports its measured value against a tolerance; tolerances are multiplied
// by tol_scale, so a scale well below 1 forces failures (used to test the
// nonzero exit path).
// ---------------------------------------------------------------------------

struct VerifyCheck {
    std::string name;
    double measured{0.0};
    double tolerance{0.0};
    bool passed{false};
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed{true};
};

VerifyReport run_verify_suite(double tol_scale = 1.0);

}  // namespace diracnu
