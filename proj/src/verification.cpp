#include "mpbvp/verification.hpp"

#include <cmath>
#include <numbers>

#include "mpbvp/errors.hpp"
#include "mpbvp/jumping_profile.hpp"
#include "mpbvp/residual.hpp"
#include "mpbvp/spectrum.hpp"
#include "strcat.hpp"

namespace mpbvp {

namespace {

constexpr double kPi = std::numbers::pi;

void push(std::vector<CheckResult>& out, std::string name, double observed,
          double bound, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.observed = observed;
    r.bound = bound;
    r.passed = observed <= bound;
    r.detail = std::move(detail);
    out.push_back(std::move(r));
}

} // namespace

std::vector<CheckResult> verify_boundary_halfeigenfunction() {
    std::vector<CheckResult> out;
    const double gp = 2.0 * kPi / 3.0; // sqrt(a)
    const double gm = kPi;             // sqrt(b)
    const double a = gp * gp, b = gm * gm;
    const double tol = 1e-12;

    // closed-form pieces: positive hump then negative cosine arc
    auto phi1 = [&](double x) { return 3.0 / (2.0 * kPi) * std::sin(gp * (x + 1.0)); };
    auto dphi1 = [&](double x) { return 1.5 / kPi * gp * std::cos(gp * (x + 1.0)); };
    auto ddphi1 = [&](double x) { return -gp * gp * phi1(x); };
    auto phi2 = [&](double x) { return -1.0 / kPi * std::cos(kPi * (x - 1.0)); };
    auto dphi2 = [&](double x) { return std::sin(kPi * (x - 1.0)); };
    auto ddphi2 = [&](double x) { return kPi * std::cos(kPi * (x - 1.0)); };

    // both ODE pieces: -phi'' = a phi^+ - b phi^- with analytic derivatives
    double r1 = 0.0, r2 = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double t = i / 200.0;
        const double x1 = -1.0 + 1.5 * t; // [-1, 1/2]
        const double u1 = phi1(x1);
        r1 = std::max(r1, std::fabs(-ddphi1(x1) -
                                    (a * std::max(u1, 0.0) - b * std::max(-u1, 0.0))));
        const double x2 = 0.5 + 0.5 * t; // [1/2, 1]
        const double u2 = phi2(x2);
        r2 = std::max(r2, std::fabs(-ddphi2(x2) -
                                    (a * std::max(u2, 0.0) - b * std::max(-u2, 0.0))));
    }
    push(out, "ode-piece-positive-hump", r1, tol);
    push(out, "ode-piece-negative-arc", r2, tol);

    // C1 join where the solution changes sign
    push(out, "c1-join-value", std::fabs(phi1(0.5) - phi2(0.5)), tol);
    push(out, "c1-join-derivative", std::fabs(dphi1(0.5) - dphi2(0.5)), tol);

    // boundary condition u(1) = -(2/3) u(-1/4), both sides -1/pi
    const double lhs = phi2(1.0);
    const double rhs = -(2.0 / 3.0) * phi1(-0.25);
    push(out, "bc-both-sides-equal", std::fabs(lhs - rhs), tol,
         detail::cat("u(1)=", lhs, ", -(2/3)u(-1/4)=", rhs));
    push(out, "bc-value-minus-one-over-pi", std::fabs(lhs - (-1.0 / kPi)), tol);

    // endpoint derivative vanishes: the solution sits on a class boundary
    push(out, "endpoint-derivative-zero", std::fabs(dphi2(1.0)), tol);

    // the library profile reproduces the closed form: phi(x) = w(1, 3/2, x)
    const JumpingProfile p(gp, gm);
    const PhasePoint delta = p.phase(1.5);
    double rprof = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = -1.0 + 2.0 * i / 400.0;
        const double exact = x <= 0.5 ? phi1(x) : phi2(x);
        rprof = std::max(rprof, std::fabs(p.w(1.0, delta, x).value - exact));
    }
    push(out, "profile-matches-closed-form", rprof, tol);

    // the endpoint residual with alpha = [-2/3] at eta = -1/4 vanishes at s=1
    const std::vector<double> eta{-0.25}, alpha{-2.0 / 3.0};
    const double g = gamma(p, 1.0, delta, +1.0, eta, alpha);
    push(out, "endpoint-residual-zero", std::fabs(g), tol);

    // classification must refuse: the endpoint derivative is critical
    bool threw = false;
    try {
        (void)nodal_class(p, 1.0, delta);
    } catch (const BoundaryCriticalPoint&) {
        threw = true;
    }
    push(out, "classification-reports-boundary", threw ? 0.0 : 1.0, 0.5,
         "expects the boundary-critical-point refusal");
    return out;
}

std::vector<CheckResult> verify_missing_class_scan() {
    std::vector<CheckResult> out;
    const double d = 0.05;
    const double a = (kPi / 2.0 + d) * (kPi / 2.0 + d);
    const double b = 1.0 / (d * d);
    const ProblemSpec spec({0.0}, {0.0}, {-0.5}, {0.0}, /*allow_outside_cone=*/true);

    const auto records = sweep_scan(spec, a, b, 1e-3, 200.0);
    int n_two_plus = 0, n_classified = 0;
    for (const auto& r : records) {
        if (!r.nodal) continue;
        ++n_classified;
        if (r.nodal->k == 2 && r.nodal->nu == +1) ++n_two_plus;
    }
    push(out, "no-2plus-class-found", static_cast<double>(n_two_plus), 0.0,
         detail::cat(records.size(), " roots, ", n_classified, " classified"));
    // the scan is only meaningful if it does find roots of other classes
    push(out, "scan-not-vacuous", n_classified >= 1 ? 0.0 : 1.0, 0.5,
         detail::cat("classified roots: ", n_classified));
    return out;
}

std::vector<CheckResult> verify_examples() {
    auto out = verify_boundary_halfeigenfunction();
    auto more = verify_missing_class_scan();
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

} // namespace mpbvp
