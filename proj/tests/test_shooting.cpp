#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mpbvp/shooting.hpp"
#include "mpbvp/spectrum.hpp"

using namespace mpbvp;

namespace {

constexpr double kPi = std::numbers::pi;

double endpoint_error_sine(double step) {
    // -u'' = u from (0, 1): u = sin(x + 1)
    const auto t = integrate([](double, double u) { return u; }, 0.0, 1.0, step);
    return std::fabs(t.values.back() - std::sin(2.0));
}

} // namespace

TEST_CASE("integrator is exact on the quadratic drop") {
    const auto t = integrate([](double, double) { return 1.0; }, 0.0, 1.0, 1e-3);
    for (size_t i = 0; i < t.grid.size(); ++i) {
        const double x = t.grid[i];
        CHECK(std::fabs(t.values[i] - (1.0 - x * x) / 2) < 1e-10);
        CHECK(std::fabs(t.derivatives[i] - (-x)) < 1e-10);
    }
}

TEST_CASE("integrator meets the sine tolerance and fourth-order decay") {
    CHECK(endpoint_error_sine(1e-3) < 1e-8);
    const double coarse = endpoint_error_sine(0.02);
    const double fine = endpoint_error_sine(0.01);
    CHECK(coarse / fine >= 12.0); // fourth order would be 16
}

TEST_CASE("integrator reproduces the jumping profile through its kink") {
    const JumpingProfile p(2.0, 1.0);
    // u(x) = psi(x + 1) solves -u'' = 4 u+ - u- with u(-1) = 0, u'(-1) = 1
    const auto t = integrate(
        [](double, double u) { return u >= 0.0 ? 4.0 * u : u; }, 0.0, 1.0, 1e-3);
    double worst = 0.0;
    for (size_t i = 0; i < t.grid.size(); ++i)
        worst = std::max(worst, std::fabs(t.values[i] - p.psi(t.grid[i] + 1.0).value));
    CHECK(worst < 1e-7);

    // the sign change of u at x = pi/2 - 1 must be resolved as a grid point
    const double kink = kPi / 2 - 1.0;
    double nearest = 1e9;
    for (double x : t.grid) nearest = std::min(nearest, std::fabs(x - kink));
    CHECK(nearest < 1e-9);
}

TEST_CASE("runaway trajectories stop with the blow-up signal") {
    // u'' = u^3 with energetic start data escapes in finite time
    CHECK_THROWS_AS(integrate([](double, double u) { return -u * u * u; }, 2.0, 5.0, 1e-3),
                    BlowUp);
}

TEST_CASE("boundary state assembles the multi-point residuals") {
    const ProblemSpec spec({0.4}, {-0.5}, {0.3}, {0.25});
    const auto t = integrate([](double, double u) { return u; }, 0.2, 0.7, 1e-3);
    const auto st = boundary_state(spec, t, 0.2, 0.7);
    CHECK(st.c == 0.2);
    CHECK(st.d == 0.7);
    CHECK(st.residual_minus ==
          doctest::Approx(0.2 - 0.4 * t.value_at(-0.5)).epsilon(1e-12));
    CHECK(st.residual_plus ==
          doctest::Approx(t.values.back() - 0.3 * t.value_at(0.25)).epsilon(1e-12));
}

TEST_CASE("start lattice covers the square with the origin inside") {
    const auto starts = multistart_lattice();
    REQUIRE(starts.size() == 441);
    bool has_origin = false, has_corner = false;
    for (const auto& [c, d] : starts) {
        if (c == 0.0 && d == 0.0) has_origin = true;
        if (c == -10.0 && d == -10.0) has_corner = true;
        CHECK(std::fabs(c) <= 10.0);
        CHECK(std::fabs(d) <= 10.0);
    }
    CHECK(has_origin);
    CHECK(has_corner);
}

TEST_CASE("constant forcing at lambda = 0 gives the parabola") {
    const auto sols = solve_halflinear(ProblemSpec::dirichlet(), 1.0, 1.0, 0.0,
                                       Forcing::one(), multistart_lattice(5, -2.0, 2.0));
    REQUIRE(sols.size() == 1);
    const auto& t = sols[0].trajectory;
    for (size_t i = 0; i < t.grid.size(); ++i)
        CHECK(std::fabs(t.values[i] - (1.0 - t.grid[i] * t.grid[i]) / 2) < 1e-8);
}

TEST_CASE("constant forcing at lambda = 5 matches the cosine solution") {
    const auto sols = solve_halflinear(ProblemSpec::dirichlet(), 1.0, 1.0, 5.0,
                                       Forcing::one(), multistart_lattice(7, -5.0, 5.0));
    REQUIRE(sols.size() == 1);
    const auto& t = sols[0].trajectory;
    const double r5 = std::sqrt(5.0);
    double worst = 0.0;
    for (size_t i = 0; i < t.grid.size(); ++i)
        worst = std::max(worst, std::fabs(t.values[i] -
                                          (std::cos(r5 * t.grid[i]) / (5 * std::cos(r5)) -
                                           0.2)));
    CHECK(worst < 1e-7);
    CHECK(t.value_at(0.0) == doctest::Approx(1.0 / (5 * std::cos(r5)) - 0.2).epsilon(1e-9));

    // certificate and interior consistency: centred second differences track
    // the right-hand side at O(step^2)
    const auto& s = sols[0];
    CHECK(std::max(std::fabs(s.state.residual_minus), std::fabs(s.state.residual_plus)) <=
          1e-8 * (1.0 + t.amplitude()));
    double worst_ode = 0.0;
    for (size_t i = 1; i + 1 < t.grid.size(); ++i) {
        const double hl = t.grid[i] - t.grid[i - 1], hr = t.grid[i + 1] - t.grid[i];
        if (std::fabs(hl - hr) > 1e-15) continue; // kink-split steps
        const double second = (t.values[i - 1] - 2 * t.values[i] + t.values[i + 1]) / (hl * hl);
        worst_ode = std::max(worst_ode, std::fabs(-second - (5.0 * t.values[i] + 1.0)));
    }
    CHECK(worst_ode < 1e-4 * (1.0 + t.amplitude()));
}

TEST_CASE("near an eigenvalue only the zero solution survives small starts") {
    const auto spec = ProblemSpec::dirichlet();
    const double lam1 = linear_eigenvalues(spec, 1)[0];
    const auto sols = solve_halflinear(spec, 1.0, 1.0, lam1 + 1e-3, Forcing::zero(),
                                       multistart_lattice(5, -1.0, 1.0));
    for (const auto& s : sols) CHECK(s.trajectory.amplitude() < 1e-5);
}

TEST_CASE("at an eigenvalue the eigen-ray start leaves a tiny residual") {
    const auto spec = ProblemSpec::dirichlet();
    const auto recs = half_eigenvalues(spec, 1.0, 1.0, 1);
    const JumpingProfile p = profile_for_coefficients(1.0, 1.0);
    for (const auto& r : recs) {
        const Eval e = p.w(r.s, r.delta, -1.0);
        const auto t = integrate(
            [lam = r.lambda](double, double u) { return lam * u; }, e.value,
            e.derivative, 1e-3);
        const auto st = boundary_state(spec, t, e.value, e.derivative);
        CHECK(std::max(std::fabs(st.residual_minus), std::fabs(st.residual_plus)) < 1e-7);
    }
}

TEST_CASE("sign-definite bump forcing on the split interval has two solutions") {
    Forcing h;
    h.eval = [](double x) { return -std::cos(kPi * x / 2); };
    const auto sols = solve_halflinear(ProblemSpec::dirichlet(), 4.0, 1.0, 1.0, h,
                                       multistart_lattice(11, -5.0, 5.0));
    CHECK(sols.size() >= 2);
    for (size_t i = 1; i < sols.size(); ++i)
        CHECK(sols[i].trajectory.sup_distance(sols[i - 1].trajectory) > 1e-3);
}

TEST_CASE("linear nonlinearity matches the half-linear solver") {
    const auto spec = ProblemSpec::dirichlet();
    const auto starts = multistart_lattice(5, -2.0, 2.0);
    const auto via_nl =
        solve_nonlinear(spec, Nonlinearity::linear(1.0), Forcing::one(), starts);
    const auto via_hl = solve_halflinear(spec, 1.0, 1.0, 1.0, Forcing::one(), starts);
    REQUIRE(via_nl.size() == via_hl.size());
    REQUIRE(via_nl.size() == 1);
    CHECK(via_nl[0].trajectory.sup_distance(via_hl[0].trajectory) < 1e-8);
}

TEST_CASE("bounded perturbation on a gap interval still has a solution") {
    // limits (20, 5) put unit level inside the first gap; the bounded shift
    // cannot close it, so the search must succeed for this forcing
    const auto nl = Nonlinearity::atan_shift(20.0, 5.0, 0.5);
    const auto sols = solve_nonlinear(ProblemSpec::dirichlet(), nl,
                                      Forcing::step(0.3, 0.7),
                                      multistart_lattice(9, -4.0, 4.0));
    CHECK(sols.size() >= 1);
    for (const auto& s : sols)
        CHECK(std::max(std::fabs(s.state.residual_minus),
                       std::fabs(s.state.residual_plus)) <=
              1e-8 * (1.0 + s.trajectory.amplitude()));
}

TEST_CASE("trajectory classification counts interior critical points") {
    // u = sin(pi (x+1)) has two interior critical points and starts upward
    const auto t = integrate(
        [](double, double u) { return kPi * kPi * u; }, 0.0, kPi, 1e-3);
    const auto nc = trajectory_nodal_class(t);
    REQUIRE(nc.has_value());
    CHECK(nc->k == 2);
    CHECK(nc->nu == +1);
}

TEST_CASE("trajectory classification refuses endpoint criticals and zero") {
    // u = sin(pi/4 (x+1)) peaks exactly at the right endpoint
    const auto flat = integrate(
        [](double, double u) { return kPi * kPi / 16 * u; }, 0.0, kPi / 4, 1e-3);
    CHECK_FALSE(trajectory_nodal_class(flat).has_value());
    const auto zero = integrate([](double, double u) { return u; }, 0.0, 0.0, 1e-3);
    CHECK_FALSE(trajectory_nodal_class(zero).has_value());
}

TEST_CASE("linear branch is the vertical eigenvalue ray") {
    const auto spec = ProblemSpec::dirichlet();
    const double lam1 = linear_eigenvalues(spec, 1)[0];
    const auto pts = continue_branch(spec, Nonlinearity::linear(1.0), 1, +1, 40);
    REQUIRE(pts.size() >= 10);
    for (const auto& p : pts) CHECK(std::fabs(p.lambda - lam1) < 1e-6 * lam1);
    CHECK(pts.back().amplitude > 10 * pts.front().amplitude);
}

TEST_CASE("branch points keep their nodal class along the bump family") {
    const auto spec = ProblemSpec::dirichlet();
    const auto nl = Nonlinearity::rational_bump(10.0, 1.0);
    const auto pts = continue_branch(spec, nl, 1, +1, 30);
    REQUIRE(pts.size() >= 5);
    for (const auto& p : pts) {
        const auto t = integrate(
            [&nl, lam = p.lambda](double, double u) { return lam * nl.f(u); }, p.c, p.d,
            1e-3);
        const auto nc = trajectory_nodal_class(t);
        REQUIRE(nc.has_value());
        CHECK(nc->k == 1);
        CHECK(nc->nu == +1);
    }
    // the branch leaves lambda_1 / f0 heading for the unit level
    const double lam1 = linear_eigenvalues(spec, 1)[0];
    CHECK(std::fabs(pts.front().lambda - lam1 / 10) < 0.05);
}

TEST_CASE("nodal search solves the bump instance in both signs") {
    const auto spec = ProblemSpec::dirichlet();
    const auto nl = Nonlinearity::rational_bump(10.0, 1.0);
    for (int nu : {+1, -1}) {
        const auto sol = find_nodal(spec, nl, 1, nu);
        REQUIRE(sol.nodal.has_value());
        CHECK(sol.nodal->k == 1);
        CHECK(sol.nodal->nu == nu);
        CHECK(std::max(std::fabs(sol.state.residual_minus),
                       std::fabs(sol.state.residual_plus)) <=
              1e-8 * (1.0 + sol.trajectory.amplitude()));
        // one-signed interior
        for (double v : sol.trajectory.values)
            CHECK(nu * v > -1e-6 * sol.trajectory.amplitude());
    }
}

TEST_CASE("nodal search handles the second level of the bump instance") {
    const auto sol =
        find_nodal(ProblemSpec::dirichlet(), Nonlinearity::rational_bump(10.0, 1.0), 2, +1);
    REQUIRE(sol.nodal.has_value());
    CHECK(sol.nodal->k == 2);
    CHECK(sol.nodal->nu == +1);
}

TEST_CASE("nodal search rejects a linear slope: no crossing is possible") {
    CHECK_THROWS_AS(
        find_nodal(ProblemSpec::dirichlet(), Nonlinearity::linear(1.0), 1, +1),
        ConditionFails);
}

TEST_CASE("nonlinearity families validate their limits") {
    CHECK_THROWS_AS(Nonlinearity::linear(-1.0), InvalidProblem);
    CHECK_THROWS_AS(Nonlinearity::rational_bump(10.0, 0.0), InvalidProblem);
    CHECK_THROWS_AS(Nonlinearity::atan_shift(0.0, 1.0, 0.1), InvalidProblem);
    const auto nl = Nonlinearity::rational_bump(10.0, 1.0);
    REQUIRE(nl.f0.has_value());
    CHECK(*nl.f0 == 10.0);
    CHECK(nl.f(1.0) == doctest::Approx(1.0 + 9.0 / 2).epsilon(1e-15));
}
