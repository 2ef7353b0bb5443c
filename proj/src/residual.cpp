#include "mpbvp/residual.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "strcat.hpp"

namespace mpbvp {

double gamma(const JumpingProfile& p, double s, const PhasePoint& delta,
             double eta0, std::span<const double> eta, std::span<const double> alpha) {
    double g = p.w(s, delta, eta0).value;
    for (size_t i = 0; i < eta.size(); ++i)
        g -= alpha[i] * p.w(s, delta, eta[i]).value;
    return g;
}

double gamma_pm(const JumpingProfile& p, double s, const PhasePoint& delta,
                const ProblemSpec& spec, int side) {
    if (side > 0) return gamma(p, s, delta, +1.0, spec.eta_plus(), spec.alpha_plus());
    return gamma(p, s, delta, -1.0, spec.eta_minus(), spec.alpha_minus());
}

namespace {

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Bisect Gamma_minus(s, .) on [lo, hi] (phase coordinates, not wrapped;
// hi may exceed the period).  The residual is continuous and piecewise
// sinusoidal in delta, so bisection is safe across its kinks.
double bisect_phase(const JumpingProfile& p, double s, const ProblemSpec& spec,
                    double lo, double hi, double tol) {
    double flo = gamma_pm(p, s, p.phase(lo), spec, -1);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = gamma_pm(p, s, p.phase(mid), spec, -1);
        if (fmid == 0.0) return mid;
        if (sgn(flo) * sgn(fmid) < 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

DeltaRoots delta_roots(const JumpingProfile& p, double s, const ProblemSpec& spec,
                       const DeltaRootOptions& opts) {
    if (!spec.minus_side_in_a_plus())
        throw InvalidProblem(
            "phase roots need the minus-side coefficients inside the positive cone");
    const double per = p.period();
    const double tol = opts.tol_factor * per;

    for (int n = opts.initial_samples; n <= opts.max_samples; n *= 2) {
        std::vector<double> val(static_cast<size_t>(n));
        const double h = per / n;
        for (int j = 0; j < n; ++j)
            val[j] = gamma_pm(p, s, p.phase(j * h), spec, -1);

        std::vector<double> roots;
        for (int j = 0; j < n; ++j) {
            const double a = val[j], b = val[(j + 1) % n];
            if (a == 0.0) {
                roots.push_back(j * h);
            } else if (sgn(a) * sgn(b) < 0) {
                roots.push_back(bisect_phase(p, s, spec, j * h, (j + 1) * h, tol));
            }
        }
        // collapse duplicates (an exact-zero sample is seen by both neighbours)
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [&](double x, double y) {
                                    return p.phase(x).distance(p.phase(y)) < 16.0 * tol;
                                }),
                    roots.end());
        if (roots.size() > 1 &&
            p.phase(roots.front()).distance(p.phase(roots.back())) < 16.0 * tol)
            roots.pop_back(); // wrap-around duplicate

        if (roots.size() != 2) {
            if (n * 2 <= opts.max_samples) continue;
            throw RootCountMismatch(
                detail::cat("expected 2 phase roots at s=", s, ", found ",
                            roots.size(), " with ", n, " samples"),
                static_cast<int>(roots.size()));
        }

        DeltaRoots out;
        int assigned = 0;
        for (double r : roots) {
            const PhasePoint ph = p.phase(r);
            const double slope = p.w(s, ph, -1.0).derivative;
            if (slope > 0.0) {
                out.delta_plus = ph;
                assigned |= 1;
            } else {
                out.delta_minus = ph;
                assigned |= 2;
            }
        }
        if (assigned != 3)
            throw RootCountMismatch(
                detail::cat("phase roots at s=", s,
                            " have equal slope signs at x=-1; labelling failed"),
                2);
        return out;
    }
    // unreachable: the loop either returns or throws at max_samples
    throw RootCountMismatch("phase root search exhausted", -1);
}

double b_value(const JumpingProfile& p, double s, const ProblemSpec& spec,
               const DeltaRootOptions& opts) {
    const DeltaRoots r = delta_roots(p, s, spec, opts);
    return gamma_pm(p, s, r.delta_minus, spec, +1) *
           gamma_pm(p, s, r.delta_plus, spec, +1);
}

} // namespace mpbvp
