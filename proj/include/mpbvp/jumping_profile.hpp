#pragma once

#include <vector>

#include "mpbvp/errors.hpp"

namespace mpbvp {

/// Value/derivative pair of a scalar function at one point.
struct Eval {
    double value = 0.0;
    double derivative = 0.0;
};

/// Nodal class of a function on [-1, 1]: k interior critical points, all
/// simple, with a zero of the function between consecutive ones, and
/// nu = sign of the derivative at x = -1.
struct NodalClass {
    int k = 0;
    int nu = 0; // +1 or -1

    friend bool operator==(const NodalClass&, const NodalClass&) = default;
};

class JumpingProfile;

/// A point delta on the phase circle of a profile, stored as the canonical
/// representative in [0, period).  Two phases equal mod period compare equal
/// (up to the distance() tolerance the caller applies).
class PhasePoint {
  public:
    PhasePoint() = default;
    PhasePoint(double delta, double period);

    double value() const noexcept { return rep_; }
    double period() const noexcept { return period_; }

    /// This phase shifted by d, re-wrapped.
    PhasePoint shifted(double d) const { return {rep_ + d, period_}; }

    /// Shortest distance along the circle.
    double distance(const PhasePoint& other) const;

  private:
    double rep_ = 0.0;
    double period_ = 1.0;
};

/// The fundamental solution profile of the jumping oscillator
///
///     -Psi'' = gamma_plus^2 Psi^+ - gamma_minus^2 Psi^-,
///      Psi(0) = 0, Psi'(0) = 1,
///
/// a periodic concatenation of a positive sine bump of width pi/gamma_plus
/// and a negative one of width pi/gamma_minus.  Everything downstream
/// (phase residuals, eigenvalue sweeps, spectrum curves) is built from
/// evaluations of this profile and of its rescaled translates
/// w(s, delta)(x) = Psi(s x - delta).
class JumpingProfile {
  public:
    /// Throws NonPositiveGamma unless both rates are finite and positive.
    JumpingProfile(double gamma_plus, double gamma_minus);

    double gamma_plus() const noexcept { return gp_; }
    double gamma_minus() const noexcept { return gm_; }

    /// Period p = pi/gamma_plus + pi/gamma_minus.
    double period() const noexcept { return period_; }

    /// The coefficient pair (a, b) = (gamma_plus^2, gamma_minus^2).
    double a() const noexcept { return gp_ * gp_; }
    double b() const noexcept { return gm_ * gm_; }

    /// Wrap an arbitrary phase onto [0, period).
    PhasePoint phase(double delta) const { return {delta, period_}; }

    /// Psi(x) and Psi'(x), closed form, periodic reduction first.
    Eval psi(double x) const noexcept;

    /// w(s, delta)(x) = Psi(s x - delta) with derivative s Psi'(s x - delta).
    Eval w(double s, const PhasePoint& delta, double x) const noexcept;

  private:
    double gp_;
    double gm_;
    double period_;
};

/// Construct a profile for coefficients (a, b); gamma = (sqrt(a), sqrt(b)).
JumpingProfile profile_for_coefficients(double a, double b);

/// Strictly increasing list of critical points of x -> w(s, delta)(x) in the
/// open interval (lo, hi).  These are exactly the points where the derivative
/// changes sign; all are simple for this profile.
std::vector<double> critical_points(const JumpingProfile& p, double s,
                                    const PhasePoint& delta, double lo, double hi);

/// Nodal class of w(s, delta) on [-1, 1]: k = number of interior critical
/// points, nu = sign w'(-1).  Throws BoundaryCriticalPoint when an endpoint
/// derivative vanishes within 1e-9 * s * max(gamma), i.e. when the function
/// sits on the boundary between two classes.
NodalClass nodal_class(const JumpingProfile& p, double s, const PhasePoint& delta);

} // namespace mpbvp
