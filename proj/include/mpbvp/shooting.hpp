#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mpbvp/jumping_profile.hpp"
#include "mpbvp/problem_spec.hpp"

namespace mpbvp {

/// Discrete solution carrier: u and u' sampled on a strictly increasing grid
/// from -1 to 1.  The grid contains every integrator step boundary, every
/// requested breakpoint, and every localized kink of the right-hand side.
struct Trajectory {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> derivatives;

    /// Linear interpolation between grid points (exact at grid points).
    double value_at(double x) const;
    double derivative_at(double x) const;

    /// sup |u| over the grid.
    double amplitude() const;

    /// sup |u - other.u| sampled on a fixed comparison grid.
    double sup_distance(const Trajectory& other) const;
};

/// Shooting unknowns and boundary residuals:
///   R- = u(-1) - sum alpha_minus[i] u(eta_minus[i])
///   R+ = u(+1) - sum alpha_plus[i]  u(eta_plus[i])
struct ShootingState {
    double c = 0.0;
    double d = 0.0;
    double residual_minus = 0.0;
    double residual_plus = 0.0;
};

/// Right-hand side in -u'' = rhs(x, u).
using ScalarField = std::function<double(double, double)>;

/// Forcing term h(x) plus the locations where it is not smooth (kept on the
/// integration grid so fixed-step accuracy survives).
struct Forcing {
    std::function<double(double)> eval;
    std::vector<double> breakpoints;

    static Forcing zero();
    static Forcing one();
    /// Step: 0 below x0, level from x0 on.
    static Forcing step(double x0, double level = -1.0);
    /// Piecewise-linear interpolant of samples (x strictly increasing,
    /// clamped outside the sampled range).
    static Forcing samples(std::vector<double> x, std::vector<double> h);
    static Forcing scaled(Forcing base, double factor);
};

/// Autonomous nonlinearity f with its declared limits: f0 = lim f(s)/s at 0
/// (optional), f(s)/s -> f_plus_inf as s -> +inf and f_minus_inf as
/// s -> -inf.  Declared limits must be finite and positive.
struct Nonlinearity {
    std::function<double(double)> f;
    std::optional<double> f0;
    double f_plus_inf = 1.0;
    double f_minus_inf = 1.0;

    static Nonlinearity linear(double c);
    /// f(s) = s (finf + (f0 - finf)/(1 + s^2)); slope f0 at 0, finf at infinity.
    static Nonlinearity rational_bump(double f0, double finf);
    /// f(s) = finf s+ - fminf s- + amp atan(s).
    static Nonlinearity atan_shift(double finf, double fminf, double amp);
};

/// Fourth-order fixed-step integration of u'' = -rhs(x, u) from
/// (x, u, u') = (-1, c, d) to x = 1.  Steps are split at the supplied
/// breakpoints and at sign changes of u (localized to 1e-12 in x), so kinks
/// of jumping right-hand sides never sit inside a step.  Throws BlowUp when
/// |u| exceeds 1e12.
Trajectory integrate(const ScalarField& rhs, double c, double d, double step,
                     std::span<const double> breakpoints = {});

struct ShootingOptions {
    double step = 1e-3;
    double tol = 1e-9;       // convergence: max |R| <= tol * (1 + amplitude)
    int max_newton = 30;
    double dedup_tol = 1e-6; // equal when sup-distance < dedup_tol * (1 + amplitude)
};

/// Boundary residuals of a trajectory against the spec.
ShootingState boundary_state(const ProblemSpec& spec, const Trajectory& t,
                             double c, double d);

/// The default multistart grid: n x n lattice over [lo, hi]^2 in (c, d).
std::vector<std::pair<double, double>> multistart_lattice(int n = 21,
                                                          double lo = -10.0,
                                                          double hi = 10.0);

/// One converged shot: trajectory, its boundary state, and the nodal class of
/// the trajectory when defined (nonzero endpoint derivatives, simple interior
/// critical points).
struct ShootResult {
    Trajectory trajectory;
    ShootingState state;
    std::optional<NodalClass> nodal;
};

/// Damped-Newton shooting on (c, d) for -u'' = lambda (a u+ - b u-) + h from
/// every start; converged solutions deduplicated by trajectory distance.
/// An empty result means no start converged (meaningful for non-solvable
/// forcing), never an error.
std::vector<ShootResult> solve_halflinear(const ProblemSpec& spec, double a, double b,
                                          double lambda, const Forcing& h,
                                          std::span<const std::pair<double, double>> starts,
                                          const ShootingOptions& opts = {});

/// Same scheme for -u'' = f(u) + h.
std::vector<ShootResult> solve_nonlinear(const ProblemSpec& spec, const Nonlinearity& nl,
                                         const Forcing& h,
                                         std::span<const std::pair<double, double>> starts,
                                         const ShootingOptions& opts = {});

/// Nodal class of an arbitrary trajectory: counts sign changes of u' in the
/// interior, requires a sign change of u between consecutive ones, and reads
/// nu from u'(-1).  Empty when the trajectory is (numerically) zero, an
/// endpoint derivative vanishes, or the zero-between-criticals structure
/// fails.
std::optional<NodalClass> trajectory_nodal_class(const Trajectory& t);

/// One accepted continuation step of the solution branch of
/// -u'' = lambda f(u).
struct BranchPoint {
    double lambda = 0.0;
    double amplitude = 0.0;
    double c = 0.0;
    double d = 0.0;
};

struct ContinuationOptions {
    double ds0 = 0.02;          // initial arclength step
    double ds_min = 1e-8;
    double ds_max = 0.5;
    double eps0 = 1e-3;         // departure distance from the trivial branch
    double amplitude_cap = 1e6; // stop once the branch reaches this amplitude
    ShootingOptions shoot{};
};

/// Pseudo-arclength continuation of the (k, nu) branch from its bifurcation
/// point (lambda_k / f0, 0, 0), tangent along the eigenfunction direction.
/// Every accepted point's trajectory is re-verified to have nodal class
/// (k, nu).  Stops at max_steps, at the amplitude cap, or when the branch
/// leaves lambda > 0; throws BranchLost when the corrector fails even at the
/// minimum arclength step.
std::vector<BranchPoint> continue_branch(const ProblemSpec& spec, const Nonlinearity& nl,
                                         int k, int nu, int max_steps,
                                         const ContinuationOptions& opts = {});

/// Solution of -u'' = f(u) with nodal class (k, nu), found by continuing the
/// branch until it crosses lambda = 1 and re-solving there.  Throws
/// ConditionFails when the structural preconditions fail (f0 missing, sign
/// condition violated, or the crossing condition (lambda_k/f0 - 1) *
/// (lambda_{k,nu}(f_inf) - 1) >= 0) and BranchLost when continuation stalls
/// before reaching lambda = 1.
ShootResult find_nodal(const ProblemSpec& spec, const Nonlinearity& nl, int k, int nu,
                       const ContinuationOptions& opts = {});

} // namespace mpbvp
