#pragma once
// Internal double-double Aberth root finder shared by the public
// roots_all API and the closed-form pipeline (which needs ~32-digit
// coefficients to keep high-degree root clusters separated).

#include <vector>

#include "orbivol/dd.hpp"

namespace orbivol::detail {

struct AberthResult {
    std::vector<ddcx> roots;
    int iterations = 0;
    bool converged = false;
};

// coeffs ascending degree, leading coefficient nonzero, degree >= 1.
// Stops when the largest relative correction drops below tol, or when it
// plateaus at the double-double rounding floor (<= 1e-18 with no further
// improvement); callers must check their own residual contract.
AberthResult aberth_dd(const std::vector<ddcx>& coeffs, int max_iter = 1500,
                       double tol = 1e-28);

}  // namespace orbivol::detail
