#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mpbvp/residual.hpp"

namespace mpbvp {

/// One half-eigenvalue record: the k-th eigenvalue of
/// -u'' = lambda (a u+ - b u-) on the branch with sign nu = sign u'(-1).
struct HalfEigenvalue {
    int k = 0;
    int nu = 0;
    double lambda = 0.0;  // = s^2
    double s = 0.0;
    PhasePoint delta;     // phase of the eigenfunction w(s, delta)
    double residual = 0.0; // |Gamma_plus| at the root
};

struct SweepOptions {
    double s_lo = 1e-3;        // sweep start; lowered automatically if k=1 is missed
    double residual_tol = 1e-11;
    int max_refinements = 2;   // extra passes at ds/2, ds/4 before giving up
    DeltaRootOptions roots{};
};

/// All half-eigenvalues with k <= k_max, sorted by lambda.  Exactly two
/// records per k (nu = +1 and -1); lambda strictly increases from level k to
/// level k+1.  Requires the spec inside the positive cone.  Throws
/// IncompleteSpectrum when the sweep cannot produce that list even after
/// refinement.
std::vector<HalfEigenvalue> half_eigenvalues(const ProblemSpec& spec, double a,
                                             double b, int k_max,
                                             const SweepOptions& opts = {});

/// Eigenvalues of the linear problem (a = b = 1), k = 1..k_max.  Both nu
/// branches are computed and must agree within 1e-9 relative or
/// BranchMismatch is thrown.
std::vector<double> linear_eigenvalues(const ProblemSpec& spec, int k_max,
                                       const SweepOptions& opts = {});

/// One sampled point of an eigenfunction, normalised to sup-norm 1.
struct EigenfunctionSample {
    double x = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

/// Sample the half-eigenfunction of a record on a grid, scaled to sup-norm 1
/// over [-1, 1] with the sign convention nu * derivative(-1) > 0.
std::vector<EigenfunctionSample> eigenfunction_samples(const JumpingProfile& p,
                                                       const HalfEigenvalue& he,
                                                       std::span<const double> grid);

/// One root found by a diagnostic sweep.  nodal is empty when the root's
/// eigenfunction has a vanishing endpoint derivative (class boundary).
struct ScanRecord {
    double s = 0.0;
    double lambda = 0.0;
    PhasePoint delta;
    int branch_nu = 0; // which phase branch produced the root
    double residual = 0.0;
    std::optional<NodalClass> nodal;
};

/// Diagnostic sweep over s in [s_lo, s_hi]: every root of the plus-side
/// residual along both phase branches, classified where possible, with no
/// completeness claim.  This is the only entry point that accepts specs
/// outside the positive cone (minus side must still be inside it, and
/// allow_outside_cone must be set on the spec).
std::vector<ScanRecord> sweep_scan(const ProblemSpec& spec, double a, double b,
                                   double s_lo, double s_hi,
                                   const SweepOptions& opts = {});

} // namespace mpbvp
