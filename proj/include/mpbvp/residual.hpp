#pragma once

#include <span>

#include "mpbvp/jumping_profile.hpp"
#include "mpbvp/problem_spec.hpp"

namespace mpbvp {

/// Boundary residual of the translate w(s, delta) at an endpoint eta0 with
/// multi-point data (alpha, eta):
///
///     Gamma = w(eta0) - sum_i alpha[i] * w(eta[i]).
///
/// Zeros in delta of the minus-side residual select the phases at which
/// w satisfies the left boundary condition.
double gamma(const JumpingProfile& p, double s, const PhasePoint& delta,
             double eta0, std::span<const double> eta, std::span<const double> alpha);

/// gamma() with the spec's side selected by sign: side > 0 uses eta0 = +1 and
/// the plus-side data, side < 0 uses eta0 = -1 and the minus-side data.
double gamma_pm(const JumpingProfile& p, double s, const PhasePoint& delta,
                const ProblemSpec& spec, int side);

/// The two phases at which w(s, .) satisfies the minus-side boundary
/// condition, labelled by the sign of w'(-1).
struct DeltaRoots {
    PhasePoint delta_plus;  // w(s, delta_plus)'(-1) > 0
    PhasePoint delta_minus; // w(s, delta_minus)'(-1) < 0
};

struct DeltaRootOptions {
    int initial_samples = 64; // circle samples; doubled up to max_samples on failure
    int max_samples = 4096;
    double tol_factor = 1e-13; // bisection stops at tol_factor * period
};

/// Locate the exactly-two zeros of delta -> Gamma_minus(s, delta) on the
/// phase circle.  Requires the minus side of the spec inside the positive
/// cone (which guarantees the two-zero structure); throws RootCountMismatch
/// if sampling does not resolve exactly two sign changes even at the finest
/// level, and InvalidProblem if the precondition fails.
DeltaRoots delta_roots(const JumpingProfile& p, double s, const ProblemSpec& spec,
                       const DeltaRootOptions& opts = {});

/// Solvability indicator B(lambda) = Gamma_plus(s, delta_minus) *
/// Gamma_plus(s, delta_plus) at s = sqrt(lambda):  B > 0 on split intervals,
/// B < 0 on gap intervals, B = 0 exactly at half-eigenvalues.
double b_value(const JumpingProfile& p, double s, const ProblemSpec& spec,
               const DeltaRootOptions& opts = {});

} // namespace mpbvp
