#pragma once

#include <optional>

#include "mpbvp/spectrum.hpp"

namespace mpbvp {

/// Interval structure of the real line relative to the half-eigenvalues of
/// (spec, a, b):
///   gap:   lambda lies between consecutive levels (or below level 1, k = 0);
///          the problem with any forcing is solvable and the reported degree
///          is (-1)^k.
///   split: lambda lies strictly between the two half-eigenvalues of one
///          level; solvability depends on the forcing and the degree is 0.
///   near_half_eigenvalue: lambda is within 1e-8 * max(1, lambda) of a
///          computed record; no degree is reported.
enum class IntervalKind { gap, split, near_half_eigenvalue };

struct LambdaClassification {
    IntervalKind kind = IntervalKind::gap;
    int k = 0;
    int nu = 0;                // the matched branch, near_half_eigenvalue only
    std::optional<int> degree; // (-1)^k on gap, 0 on split, absent when near
    int b_sign = 0;            // sign of B(lambda); 0 when not computed
    double lower = 0.0;        // enclosing interval from the eigenvalue list
    double upper = 0.0;
};

/// Classify lambda.  Degree values are reported from the interval structure,
/// never computed; the sign of B(lambda) is attached as the independent
/// cross-check whenever lambda > 0 and the point is not near a record.
LambdaClassification classify_lambda(const ProblemSpec& spec, double a, double b,
                                     double lambda, const SweepOptions& opts = {});

/// Step forcing h(x) = 0 on [-1, x0), level on [x0, 1] for which the
/// half-linear problem at a split-interval lambda has no solution.
struct ForcingFunction {
    double x0 = 0.0;
    double level = -1.0; // +1 or -1, matched to the sign of the phase residuals

    double operator()(double x) const { return x < x0 ? 0.0 : level; }
};

/// Construct the non-solvability forcing for a split-interval lambda: the
/// switch point clears every interior node, sits within a safety radius of 1
/// so the relevant comparison solutions keep their sign on [x0, 1], and the
/// step sign is opposite to the (common) sign of the two plus-side phase
/// residuals.  Throws NotSplitInterval when lambda is not in a split interval.
ForcingFunction nonsolvable_forcing(const ProblemSpec& spec, double a, double b,
                                    double lambda, const SweepOptions& opts = {});

} // namespace mpbvp
