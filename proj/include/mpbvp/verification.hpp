#pragma once

#include <string>
#include <vector>

namespace mpbvp {

/// Outcome of one named golden check.
struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0; ///< measured quantity (residual, count, ...)
    double bound = 0.0;    ///< what it was compared against
    std::string detail;
};

/// Checks the explicit boundary-class half-eigenfunction instance:
/// a = (2pi/3)^2, b = pi^2, u(-1) = 0, u(1) = -(2/3) u(-1/4), whose
/// closed-form solution has a vanishing endpoint derivative (it sits on
/// the boundary of the (1,+) nodal class). Verifies both ODE pieces, the
/// C1 join, the boundary condition, the endpoint derivative, agreement
/// with the library profile, and that classification reports the
/// boundary critical point.
std::vector<CheckResult> verify_boundary_halfeigenfunction();

/// Scans the missing-class instance a = (pi/2 + 0.05)^2, b = 400,
/// u(-1) = 0, u(1) = -(1/2) u(0) (one negative coefficient, outside the
/// positive cone) over s in (0, 200] and checks that no root of the
/// boundary residual is classified (2,+) while other classes do appear.
std::vector<CheckResult> verify_missing_class_scan();

/// Both suites concatenated, in the order above.
std::vector<CheckResult> verify_examples();

} // namespace mpbvp
