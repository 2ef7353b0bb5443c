#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mpbvp/spectrum.hpp"

namespace mpbvp {

/// One sample of a spectrum curve in the (a, b) plane:
/// (point_a, point_b) = lambda * (sin theta, cos theta), where lambda is the
/// k-th half-eigenvalue of the ray direction (sin theta, cos theta).
/// Membership meaning: the half-eigenvalue of (point_a, point_b) itself is 1.
struct FucikSample {
    int k = 0;
    int nu = 0;
    double theta = 0.0;
    double lambda = 0.0;
    double point_a = 0.0;
    double point_b = 0.0;
};

/// Default sampling grid: n Chebyshev-spaced angles on [0.02, pi/2 - 0.02]
/// (denser near the ends, where the curves run off to their asymptotes).
std::vector<double> default_theta_grid(int n = 101);

/// Trace the (k, nu) curve over a theta grid strictly inside (0, pi/2).
std::vector<FucikSample> trace_curve(const ProblemSpec& spec, int k, int nu,
                                     std::span<const double> theta_grid,
                                     const SweepOptions& opts = {});

/// Trace every curve with k <= k_max in one sweep per angle; output sorted by
/// (k, nu descending, theta).
std::vector<FucikSample> trace_all(const ProblemSpec& spec, int k_max,
                                   std::span<const double> theta_grid,
                                   const SweepOptions& opts = {});

/// The point where both k-th curves meet the diagonal a = b: (lambda_k,
/// lambda_k) from the linear eigenvalue, cross-checked by tracing at
/// theta = pi/4 (mismatch beyond 1e-8 relative raises BranchMismatch).
std::pair<double, double> diagonal_crossing(const ProblemSpec& spec, int k,
                                            const SweepOptions& opts = {});

} // namespace mpbvp
