#include "mpbvp/jumping_profile.hpp"

#include <algorithm>
#include <cmath>

#include "strcat.hpp"

namespace mpbvp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reduce x to [0, p).  floor-based so large |x| costs one rounding of order
// |x| * eps, which the periodicity contract budgets for.
double wrap(double x, double p) {
    double r = x - p * std::floor(x / p);
    if (r >= p) r -= p; // floor rounding can land exactly on p
    if (r < 0.0) r = 0.0;
    return r;
}

} // namespace

PhasePoint::PhasePoint(double delta, double period)
    : rep_(wrap(delta, period)), period_(period) {}

double PhasePoint::distance(const PhasePoint& other) const {
    double d = std::fabs(rep_ - other.rep_);
    return std::min(d, period_ - d);
}

JumpingProfile::JumpingProfile(double gamma_plus, double gamma_minus)
    : gp_(gamma_plus), gm_(gamma_minus) {
    if (!(std::isfinite(gp_) && std::isfinite(gm_)) || gp_ <= 0.0 || gm_ <= 0.0)
        throw NonPositiveGamma(detail::cat(
            "profile rates must be finite and positive, got (", gp_, ", ", gm_, ")"));
    period_ = kPi / gp_ + kPi / gm_;
}

Eval JumpingProfile::psi(double x) const noexcept {
    const double r = wrap(x, period_);
    const double split = kPi / gp_;
    if (r <= split) {
        // positive bump: sin(gp r)/gp
        return {std::sin(gp_ * r) / gp_, std::cos(gp_ * r)};
    }
    // negative bump: -sin(gm (r - pi/gp))/gm
    const double t = r - split;
    return {-std::sin(gm_ * t) / gm_, -std::cos(gm_ * t)};
}

Eval JumpingProfile::w(double s, const PhasePoint& delta, double x) const noexcept {
    Eval e = psi(s * x - delta.value());
    e.derivative *= s;
    return e;
}

JumpingProfile profile_for_coefficients(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a <= 0.0 || b <= 0.0)
        throw NonPositiveGamma(detail::cat(
            "coefficients must be finite and positive, got (", a, ", ", b, ")"));
    return {std::sqrt(a), std::sqrt(b)};
}

std::vector<double> critical_points(const JumpingProfile& p, double s,
                                    const PhasePoint& delta, double lo, double hi) {
    // Psi' vanishes exactly at the two bump midpoints of each period:
    //   c1 = pi/(2 gp),  c2 = pi/gp + pi/(2 gm)   (mod p).
    // Critical points of w are x = (c + delta + j p)/s.
    const double per = p.period();
    const double bases[2] = {kPi / (2.0 * p.gamma_plus()),
                             kPi / p.gamma_plus() + kPi / (2.0 * p.gamma_minus())};
    std::vector<double> out;
    for (double c : bases) {
        const double phase0 = c + delta.value();
        // x in (lo, hi)  <=>  j in ((s lo - phase0)/p, (s hi - phase0)/p)
        long j_lo = static_cast<long>(std::ceil((s * lo - phase0) / per));
        long j_hi = static_cast<long>(std::floor((s * hi - phase0) / per));
        for (long j = j_lo - 1; j <= j_hi + 1; ++j) { // pad against rounding
            double x = (phase0 + static_cast<double>(j) * per) / s;
            if (x > lo && x < hi) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

NodalClass nodal_class(const JumpingProfile& p, double s, const PhasePoint& delta) {
    const double tol = 1e-9 * s * std::max(p.gamma_plus(), p.gamma_minus());
    const Eval at_left = p.w(s, delta, -1.0);
    const Eval at_right = p.w(s, delta, 1.0);
    if (std::fabs(at_left.derivative) < tol || std::fabs(at_right.derivative) < tol)
        throw BoundaryCriticalPoint(detail::cat(
            "endpoint derivative vanishes (w'(-1)=", at_left.derivative,
            ", w'(1)=", at_right.derivative, "); nodal class undefined"));
    // Interior critical points are bounded away from +-1 by the check above,
    // so the open-interval count is unambiguous.  For this profile every
    // critical point is simple and the function crosses zero between
    // consecutive ones, so no further structure checks are needed.
    const auto crit = critical_points(p, s, delta, -1.0, 1.0);
    return {static_cast<int>(crit.size()), at_left.derivative > 0.0 ? +1 : -1};
}

} // namespace mpbvp
