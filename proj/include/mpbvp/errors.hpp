#pragma once

#include <stdexcept>
#include <string>

namespace mpbvp {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A jumping profile was requested with gamma_plus <= 0 or gamma_minus <= 0.
struct NonPositiveGamma : Error {
    using Error::Error;
};

/// Nodal classification hit a critical point at x = -1 or x = +1, where the
/// class (k, nu) is not defined.  Callers that sweep families of functions
/// should treat this as "on the boundary between two classes".
struct BoundaryCriticalPoint : Error {
    using Error::Error;
};

/// The phase residual did not have exactly two zeros on the circle even at
/// the finest sampling; carries the observed zero count.
struct RootCountMismatch : Error {
    RootCountMismatch(const std::string& what, int observed_count)
        : Error(what), observed(observed_count) {}
    int observed;
};

/// The eigenvalue sweep could not produce a consistent, complete list
/// (missing or duplicated (k, nu) records after refinement).
struct IncompleteSpectrum : Error {
    using Error::Error;
};

/// The two branches of a linear (a == b) eigenvalue disagree beyond tolerance.
struct BranchMismatch : Error {
    using Error::Error;
};

/// An initial value integration left |u| <= 1e12 territory; the shot diverged.
struct BlowUp : Error {
    using Error::Error;
};

/// A non-solvability certificate was requested at a lambda that does not lie
/// in a split interval.
struct NotSplitInterval : Error {
    using Error::Error;
};

/// A structural precondition of the nodal-solution search fails (missing f0,
/// sign condition violated, or the eigenvalue crossing condition not met).
struct ConditionFails : Error {
    using Error::Error;
};

/// Branch continuation stopped (step collapse or budget exhausted) before the
/// target was reached.
struct BranchLost : Error {
    using Error::Error;
};

/// Malformed problem data: mismatched array lengths, nodes outside (-1, 1),
/// non-finite entries, or a spec outside the admissible cone where one is
/// required.
struct InvalidProblem : Error {
    using Error::Error;
};

} // namespace mpbvp
