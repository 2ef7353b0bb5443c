#include "mpbvp/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "mpbvp/spectrum.hpp"
#include "strcat.hpp"

namespace mpbvp {

namespace {

constexpr double kBlowUp = 1e12;
constexpr double kKinkLocate = 1e-12; // kink localization width in x

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

struct State {
    double u, v;
};

// One classical fourth-order step of (u, v)' = (v, -rhs(x, u)).
State rk4_step(const ScalarField& rhs, double x, const State& y, double h) {
    const double k1u = y.v;
    const double k1v = -rhs(x, y.u);
    const double k2u = y.v + 0.5 * h * k1v;
    const double k2v = -rhs(x + 0.5 * h, y.u + 0.5 * h * k1u);
    const double k3u = y.v + 0.5 * h * k2v;
    const double k3v = -rhs(x + 0.5 * h, y.u + 0.5 * h * k2u);
    const double k4u = y.v + h * k3v;
    const double k4v = -rhs(x + h, y.u + h * k3u);
    return {y.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            y.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

void check_state(const State& y, double x) {
    if (!std::isfinite(y.u) || !std::isfinite(y.v) || std::fabs(y.u) > kBlowUp)
        throw BlowUp(detail::cat("trajectory left |u| <= 1e12 near x=", x));
}

// Interior breakpoints for an integration: spec nodes plus forcing kinks.
std::vector<double> merge_breakpoints(const ProblemSpec& spec, const Forcing& h) {
    std::vector<double> b;
    auto add = [&](const std::vector<double>& xs) {
        for (double x : xs)
            if (x > -1.0 + 1e-14 && x < 1.0 - 1e-14) b.push_back(x);
    };
    add(spec.eta_minus());
    add(spec.eta_plus());
    add(h.breakpoints);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [](double x, double y) { return y - x < 1e-14; }),
            b.end());
    return b;
}

void validate_nonlinearity(const Nonlinearity& nl) {
    if (!nl.f) throw InvalidProblem("nonlinearity has no function handle");
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!pos(nl.f_plus_inf) || !pos(nl.f_minus_inf))
        throw InvalidProblem(detail::cat("declared limits must be finite and positive, got (",
                                         nl.f_plus_inf, ", ", nl.f_minus_inf, ")"));
    if (nl.f0 && !pos(*nl.f0))
        throw InvalidProblem(detail::cat("declared f0 must be finite and positive, got ",
                                         *nl.f0));
}

} // namespace

double Trajectory::value_at(double x) const {
    if (grid.empty()) return 0.0;
    if (x <= grid.front()) return values.front();
    if (x >= grid.back()) return values.back();
    const auto it = std::lower_bound(grid.begin(), grid.end(), x);
    const auto i = static_cast<size_t>(it - grid.begin());
    if (grid[i] == x) return values[i];
    const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return values[i - 1] + t * (values[i] - values[i - 1]);
}

double Trajectory::derivative_at(double x) const {
    if (grid.empty()) return 0.0;
    if (x <= grid.front()) return derivatives.front();
    if (x >= grid.back()) return derivatives.back();
    const auto it = std::lower_bound(grid.begin(), grid.end(), x);
    const auto i = static_cast<size_t>(it - grid.begin());
    if (grid[i] == x) return derivatives[i];
    const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return derivatives[i - 1] + t * (derivatives[i] - derivatives[i - 1]);
}

double Trajectory::amplitude() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

double Trajectory::sup_distance(const Trajectory& other) const {
    constexpr int kSamples = 257;
    double m = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double x = -1.0 + 2.0 * i / (kSamples - 1.0);
        m = std::max(m, std::fabs(value_at(x) - other.value_at(x)));
    }
    return m;
}

Trajectory integrate(const ScalarField& rhs, double c, double d, double step,
                     std::span<const double> breakpoints) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw InvalidProblem(detail::cat("integration step must be positive, got ", step));
    if (!rhs) throw InvalidProblem("integrate needs a right-hand side");

    std::vector<double> nodes;
    nodes.push_back(-1.0);
    for (double b : breakpoints)
        if (b > -1.0 + 1e-14 && b < 1.0 - 1e-14) nodes.push_back(b);
    nodes.push_back(1.0);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double x, double y) { return y - x < 1e-14; }),
                nodes.end());

    Trajectory out;
    State y{c, d};
    check_state(y, -1.0);
    out.grid.push_back(-1.0);
    out.values.push_back(y.u);
    out.derivatives.push_back(y.v);

    auto push = [&](double x, const State& s) {
        out.grid.push_back(x);
        out.values.push_back(s.u);
        out.derivatives.push_back(s.v);
    };

    for (size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
        const double s0 = nodes[seg], s1 = nodes[seg + 1];
        const double len = s1 - s0;
        const int n = std::max(1, static_cast<int>(std::ceil(len / step - 1e-12)));
        const double h = len / n;
        double x = s0;
        for (int i = 1; i <= n; ++i) {
            const double x1 = (i == n) ? s1 : s0 + i * h;
            // advance x -> x1, splitting the step wherever u crosses zero so
            // the kink of a jumping right-hand side never sits inside a step
            while (true) {
                const double hh = x1 - x;
                State trial = rk4_step(rhs, x, y, hh);
                if (y.u != 0.0 && trial.u != 0.0 && sgn(y.u) != sgn(trial.u) &&
                    hh > 4.0 * kKinkLocate) {
                    double lo = 0.0, hi = hh;
                    while (hi - lo > kKinkLocate) {
                        const double mid = 0.5 * (lo + hi);
                        const double um = rk4_step(rhs, x, y, mid).u;
                        if (um == 0.0) {
                            lo = hi = mid;
                        } else if (sgn(um) == sgn(y.u)) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    const double tau = 0.5 * (lo + hi);
                    if (tau > kKinkLocate && tau < hh - kKinkLocate) {
                        y = rk4_step(rhs, x, y, tau);
                        x += tau;
                        check_state(y, x);
                        push(x, y);
                        continue; // reprocess the remainder of this step
                    }
                }
                y = trial;
                x = x1;
                check_state(y, x);
                push(x, y);
                break;
            }
        }
    }
    return out;
}

ShootingState boundary_state(const ProblemSpec& spec, const Trajectory& t, double c,
                             double d) {
    ShootingState st;
    st.c = c;
    st.d = d;
    double rm = c;
    for (size_t i = 0; i < spec.eta_minus().size(); ++i)
        rm -= spec.alpha_minus()[i] * t.value_at(spec.eta_minus()[i]);
    double rp = t.values.back();
    for (size_t i = 0; i < spec.eta_plus().size(); ++i)
        rp -= spec.alpha_plus()[i] * t.value_at(spec.eta_plus()[i]);
    st.residual_minus = rm;
    st.residual_plus = rp;
    return st;
}

std::vector<std::pair<double, double>> multistart_lattice(int n, double lo, double hi) {
    if (n < 1 || !(hi > lo)) throw InvalidProblem("lattice needs n >= 1 and hi > lo");
    std::vector<std::pair<double, double>> starts;
    starts.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double c = (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1.0);
            const double d = (n == 1) ? 0.5 * (lo + hi) : lo + (hi - lo) * j / (n - 1.0);
            starts.emplace_back(c, d);
        }
    return starts;
}

std::optional<NodalClass> trajectory_nodal_class(const Trajectory& t) {
    const size_t n = t.grid.size();
    if (n < 3) return std::nullopt;
    const double amp = t.amplitude();
    double dmax = 0.0;
    for (double v : t.derivatives) dmax = std::max(dmax, std::fabs(v));
    if (amp <= 0.0 || dmax <= 0.0) return std::nullopt;

    const double end_tol = 1e-7 * dmax;
    if (std::fabs(t.derivatives.front()) <= end_tol ||
        std::fabs(t.derivatives.back()) <= end_tol)
        return std::nullopt; // endpoint critical point: class boundary

    // sign changes of u' in the interior ...
    std::vector<size_t> crossings;
    int prev = sgn(t.derivatives.front());
    for (size_t i = 1; i < n; ++i) {
        const int s = sgn(t.derivatives[i]);
        if (s == 0 || s == prev) continue;
        crossings.push_back(i);
        prev = s;
    }
    // ... with u changing sign between consecutive critical points
    int prev_val_sign = 0;
    for (size_t idx : crossings) {
        if (std::fabs(t.values[idx]) < 1e-9 * amp) return std::nullopt;
        const int s = sgn(t.values[idx]);
        if (s == prev_val_sign) return std::nullopt;
        prev_val_sign = s;
    }
    return NodalClass{static_cast<int>(crossings.size()),
                      sgn(t.derivatives.front())};
}

Forcing Forcing::zero() {
    return {[](double) { return 0.0; }, {}};
}

Forcing Forcing::one() {
    return {[](double) { return 1.0; }, {}};
}

Forcing Forcing::step(double x0, double level) {
    if (!std::isfinite(x0) || !std::isfinite(level))
        throw InvalidProblem("step forcing needs finite x0 and level");
    return {[x0, level](double x) { return x < x0 ? 0.0 : level; }, {x0}};
}

Forcing Forcing::samples(std::vector<double> x, std::vector<double> h) {
    if (x.size() != h.size() || x.size() < 2)
        throw InvalidProblem("sampled forcing needs >= 2 matching (x, h) pairs");
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw InvalidProblem("sampled forcing abscissae must strictly increase");
    auto xs = std::make_shared<std::vector<double>>(std::move(x));
    auto hs = std::make_shared<std::vector<double>>(std::move(h));
    Forcing f;
    f.breakpoints = *xs;
    f.eval = [xs, hs](double xq) {
        if (xq <= xs->front()) return hs->front();
        if (xq >= xs->back()) return hs->back();
        const auto it = std::lower_bound(xs->begin(), xs->end(), xq);
        const auto i = static_cast<size_t>(it - xs->begin());
        if ((*xs)[i] == xq) return (*hs)[i];
        const double t = (xq - (*xs)[i - 1]) / ((*xs)[i] - (*xs)[i - 1]);
        return (*hs)[i - 1] + t * ((*hs)[i] - (*hs)[i - 1]);
    };
    return f;
}

Forcing Forcing::scaled(Forcing base, double factor) {
    if (!base.eval) throw InvalidProblem("cannot scale an empty forcing");
    Forcing f;
    f.breakpoints = std::move(base.breakpoints);
    f.eval = [inner = std::move(base.eval), factor](double x) {
        return factor * inner(x);
    };
    return f;
}

Nonlinearity Nonlinearity::linear(double c) {
    Nonlinearity nl;
    nl.f = [c](double s) { return c * s; };
    nl.f0 = c;
    nl.f_plus_inf = nl.f_minus_inf = c;
    validate_nonlinearity(nl);
    return nl;
}

Nonlinearity Nonlinearity::rational_bump(double f0, double finf) {
    Nonlinearity nl;
    nl.f = [f0, finf](double s) { return s * (finf + (f0 - finf) / (1.0 + s * s)); };
    nl.f0 = f0;
    nl.f_plus_inf = nl.f_minus_inf = finf;
    validate_nonlinearity(nl);
    return nl;
}

Nonlinearity Nonlinearity::atan_shift(double finf, double fminf, double amp) {
    Nonlinearity nl;
    nl.f = [finf, fminf, amp](double s) {
        const double linear = s >= 0.0 ? finf * s : fminf * s;
        return linear + amp * std::atan(s);
    };
    if (finf == fminf && finf + amp > 0.0) nl.f0 = finf + amp;
    nl.f_plus_inf = finf;
    nl.f_minus_inf = fminf;
    validate_nonlinearity(nl);
    return nl;
}

namespace {

struct Shot {
    Trajectory traj;
    ShootingState st;
    double norm = 0.0; // max boundary residual
};

std::optional<Shot> evaluate_shot(const ScalarField& rhs, const ProblemSpec& spec,
                                  double c, double d, double step,
                                  std::span<const double> bks) {
    try {
        Shot s;
        s.traj = integrate(rhs, c, d, step, bks);
        s.st = boundary_state(spec, s.traj, c, d);
        if (!std::isfinite(s.st.residual_minus) || !std::isfinite(s.st.residual_plus))
            return std::nullopt;
        s.norm = std::max(std::fabs(s.st.residual_minus), std::fabs(s.st.residual_plus));
        return s;
    } catch (const BlowUp&) {
        return std::nullopt;
    }
}

// Damped Newton on (c, d) against the two boundary residuals.
std::optional<ShootResult> shoot_newton(const ScalarField& rhs, const ProblemSpec& spec,
                                        double c, double d, const ShootingOptions& opts,
                                        std::span<const double> bks) {
    auto cur = evaluate_shot(rhs, spec, c, d, opts.step, bks);
    if (!cur) return std::nullopt;

    for (int iter = 0; iter < opts.max_newton; ++iter) {
        if (cur->norm <= opts.tol * (1.0 + cur->traj.amplitude()))
            return ShootResult{cur->traj, cur->st, trajectory_nodal_class(cur->traj)};

        const double eps = 1e-7 * (1.0 + std::fabs(c) + std::fabs(d));
        const auto pc = evaluate_shot(rhs, spec, c + eps, d, opts.step, bks);
        const auto pd = evaluate_shot(rhs, spec, c, d + eps, opts.step, bks);
        if (!pc || !pd) return std::nullopt;

        const double j11 = (pc->st.residual_minus - cur->st.residual_minus) / eps;
        const double j12 = (pd->st.residual_minus - cur->st.residual_minus) / eps;
        const double j21 = (pc->st.residual_plus - cur->st.residual_plus) / eps;
        const double j22 = (pd->st.residual_plus - cur->st.residual_plus) / eps;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || std::fabs(det) < 1e-14 * (1.0 + std::fabs(j11 * j22)))
            return std::nullopt;
        const double dc = (-cur->st.residual_minus * j22 + cur->st.residual_plus * j12) / det;
        const double dd = (-cur->st.residual_plus * j11 + cur->st.residual_minus * j21) / det;

        bool accepted = false;
        for (double t = 1.0; t >= 1.0 / 64.0 - 1e-12; t *= 0.5) {
            const auto trial =
                evaluate_shot(rhs, spec, c + t * dc, d + t * dd, opts.step, bks);
            if (!trial) continue;
            if (trial->norm < cur->norm ||
                trial->norm <= opts.tol * (1.0 + trial->traj.amplitude())) {
                c += t * dc;
                d += t * dd;
                cur = trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) return std::nullopt; // stalled: not a solution basin
    }
    return std::nullopt;
}

std::vector<ShootResult> run_starts(const ScalarField& rhs, const ProblemSpec& spec,
                                    std::span<const std::pair<double, double>> starts,
                                    const ShootingOptions& opts,
                                    std::span<const double> bks) {
    if (starts.empty()) throw InvalidProblem("shooting needs a nonempty start list");
    std::vector<ShootResult> sols;
    for (const auto& [c0, d0] : starts) {
        auto r = shoot_newton(rhs, spec, c0, d0, opts, bks);
        if (!r) continue;
        const double amp = r->trajectory.amplitude();
        bool dup = false;
        for (const auto& s : sols) {
            const double scale = 1.0 + std::max(amp, s.trajectory.amplitude());
            if (s.trajectory.sup_distance(r->trajectory) < opts.dedup_tol * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) sols.push_back(std::move(*r));
    }
    std::sort(sols.begin(), sols.end(), [](const ShootResult& x, const ShootResult& y) {
        if (x.state.c != y.state.c) return x.state.c < y.state.c;
        return x.state.d < y.state.d;
    });
    return sols;
}

} // namespace

std::vector<ShootResult> solve_halflinear(const ProblemSpec& spec, double a, double b,
                                          double lambda, const Forcing& h,
                                          std::span<const std::pair<double, double>> starts,
                                          const ShootingOptions& opts) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidProblem("coefficients a, b must be finite and positive");
    if (!std::isfinite(lambda)) throw InvalidProblem("lambda must be finite");
    if (!h.eval) throw InvalidProblem("forcing has no evaluator");
    const auto he = h.eval;
    ScalarField rhs = [lambda, a, b, he](double x, double u) {
        return lambda * (u >= 0.0 ? a * u : b * u) + he(x);
    };
    const auto bks = merge_breakpoints(spec, h);
    return run_starts(rhs, spec, starts, opts, bks);
}

std::vector<ShootResult> solve_nonlinear(const ProblemSpec& spec, const Nonlinearity& nl,
                                         const Forcing& h,
                                         std::span<const std::pair<double, double>> starts,
                                         const ShootingOptions& opts) {
    validate_nonlinearity(nl);
    if (!h.eval) throw InvalidProblem("forcing has no evaluator");
    const auto f = nl.f;
    const auto he = h.eval;
    ScalarField rhs = [f, he](double x, double u) { return f(u) + he(x); };
    const auto bks = merge_breakpoints(spec, h);
    return run_starts(rhs, spec, starts, opts, bks);
}

namespace {

struct Vec3 {
    double l = 0.0, c = 0.0, d = 0.0;
};

Vec3 operator+(const Vec3& x, const Vec3& y) { return {x.l + y.l, x.c + y.c, x.d + y.d}; }
Vec3 operator-(const Vec3& x, const Vec3& y) { return {x.l - y.l, x.c - y.c, x.d - y.d}; }
Vec3 operator*(double t, const Vec3& x) { return {t * x.l, t * x.c, t * x.d}; }
double dot(const Vec3& x, const Vec3& y) { return x.l * y.l + x.c * y.c + x.d * y.d; }
double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }

// Solve a 3x3 system in place by Gaussian elimination with partial pivoting.
bool solve3(double A[3][3], double b[3], double out[3]) {
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(A[perm[r]][col]) > std::fabs(A[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = A[perm[col]][col];
        if (!std::isfinite(p) || std::fabs(p) < 1e-300) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double m = A[perm[r]][col] / p;
            for (int cc = col; cc < 3; ++cc) A[perm[r]][cc] -= m * A[perm[col]][cc];
            b[perm[r]] -= m * b[perm[col]];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = b[perm[row]];
        for (int cc = row + 1; cc < 3; ++cc) s -= A[perm[row]][cc] * out[cc];
        out[row] = s / A[perm[row]][row];
        if (!std::isfinite(out[row])) return false;
    }
    return true;
}

struct BranchShot {
    Vec3 z;
    Trajectory traj;
    ShootingState st;
};

// Residuals of one branch candidate: boundary pair for -u'' = lambda f(u).
std::optional<BranchShot> branch_eval(const ProblemSpec& spec, const Nonlinearity& nl,
                                      const Vec3& z, const ShootingOptions& opts,
                                      std::span<const double> bks) {
    const auto f = nl.f;
    const double lambda = z.l;
    ScalarField rhs = [f, lambda](double, double u) { return lambda * f(u); };
    auto shot = evaluate_shot(rhs, spec, z.c, z.d, opts.step, bks);
    if (!shot) return std::nullopt;
    return BranchShot{z, std::move(shot->traj), shot->st};
}

// Newton corrector for F(z) = (R-, R+, <z - base, tangent> - ds) = 0.
std::optional<BranchShot> branch_corrector(const ProblemSpec& spec, const Nonlinearity& nl,
                                           Vec3 z, const Vec3& base, const Vec3& tangent,
                                           double ds, const ShootingOptions& opts,
                                           std::span<const double> bks) {
    auto cur = branch_eval(spec, nl, z, opts, bks);
    if (!cur) return std::nullopt;
    auto fnorm = [&](const BranchShot& s) {
        const double con = dot(s.z - base, tangent) - ds;
        return std::max({std::fabs(s.st.residual_minus), std::fabs(s.st.residual_plus),
                         std::fabs(con)});
    };
    for (int iter = 0; iter < opts.max_newton; ++iter) {
        const double con = dot(cur->z - base, tangent) - ds;
        const double rtol = opts.tol * (1.0 + cur->traj.amplitude());
        if (std::fabs(cur->st.residual_minus) <= rtol &&
            std::fabs(cur->st.residual_plus) <= rtol && std::fabs(con) <= 1e-10 * (1.0 + std::fabs(ds)))
            return cur;

        Vec3 zc = cur->z;
        const double el = 1e-7 * (1.0 + std::fabs(zc.l));
        const double ec = 1e-7 * (1.0 + std::fabs(zc.c));
        const double ed = 1e-7 * (1.0 + std::fabs(zc.d));
        const auto pl = branch_eval(spec, nl, {zc.l + el, zc.c, zc.d}, opts, bks);
        const auto pc = branch_eval(spec, nl, {zc.l, zc.c + ec, zc.d}, opts, bks);
        const auto pd = branch_eval(spec, nl, {zc.l, zc.c, zc.d + ed}, opts, bks);
        if (!pl || !pc || !pd) return std::nullopt;

        double A[3][3] = {
            {(pl->st.residual_minus - cur->st.residual_minus) / el,
             (pc->st.residual_minus - cur->st.residual_minus) / ec,
             (pd->st.residual_minus - cur->st.residual_minus) / ed},
            {(pl->st.residual_plus - cur->st.residual_plus) / el,
             (pc->st.residual_plus - cur->st.residual_plus) / ec,
             (pd->st.residual_plus - cur->st.residual_plus) / ed},
            {tangent.l, tangent.c, tangent.d},
        };
        double rhs_vec[3] = {-cur->st.residual_minus, -cur->st.residual_plus, -con};
        double delta[3];
        if (!solve3(A, rhs_vec, delta)) return std::nullopt;

        bool accepted = false;
        const double n0 = fnorm(*cur);
        for (double t = 1.0; t >= 1.0 / 64.0 - 1e-12; t *= 0.5) {
            const Vec3 trial_z = zc + t * Vec3{delta[0], delta[1], delta[2]};
            auto trial = branch_eval(spec, nl, trial_z, opts, bks);
            if (!trial) continue;
            if (fnorm(*trial) < n0 || fnorm(*trial) <= rtol) {
                cur = trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) return std::nullopt;
    }
    return std::nullopt;
}

struct ContinuationTrace {
    std::vector<BranchPoint> points;
    std::optional<ShootResult> at_lambda_one;
};

// Shared continuation engine; stops early at the lambda = 1 crossing when
// requested (resolving the crossing by a fixed-lambda Newton solve).
ContinuationTrace run_continuation(const ProblemSpec& spec, const Nonlinearity& nl,
                                   int k, int nu, int max_steps, bool stop_at_one,
                                   const ContinuationOptions& opts) {
    validate_nonlinearity(nl);
    if (k < 1 || (nu != +1 && nu != -1))
        throw InvalidProblem("branch continuation needs k >= 1 and nu in {+1, -1}");
    if (!nl.f0)
        throw ConditionFails("branch continuation needs a declared f0");
    if (!spec.in_a_plus())
        throw InvalidProblem("branch continuation requires the spec inside the positive cone");

    // bifurcation point and eigenfunction departure direction
    const double lambda_k = linear_eigenvalues(spec, k)[static_cast<size_t>(k - 1)];
    const double lambda_bif = lambda_k / *nl.f0;
    const JumpingProfile lin = profile_for_coefficients(1.0, 1.0);
    Vec3 dir{0.0, 0.0, 0.0};
    for (const auto& he : half_eigenvalues(spec, 1.0, 1.0, k)) {
        if (he.k != k || he.nu != nu) continue;
        const Eval e = lin.w(he.s, he.delta, -1.0);
        const double nrm = std::hypot(e.value, e.derivative);
        dir = {0.0, e.value / nrm, e.derivative / nrm};
    }
    const std::vector<double> bks = merge_breakpoints(spec, Forcing::zero());

    ContinuationTrace trace;
    const Vec3 z_triv{lambda_bif, 0.0, 0.0};

    // leave the trivial branch: corrector at distance eps along dir
    std::optional<BranchShot> first;
    for (double eps = opts.eps0; eps >= opts.ds_min; eps *= 0.5) {
        first = branch_corrector(spec, nl, z_triv + eps * dir, z_triv, dir, eps,
                                 opts.shoot, bks);
        if (first && first->z.l > 0.0 &&
            trajectory_nodal_class(first->traj) == NodalClass{k, nu})
            break;
        first.reset();
    }
    if (!first)
        throw BranchLost(detail::cat("could not leave the trivial branch at (k=", k,
                                     ", nu=", nu, ")"));

    Vec3 z_prev = z_triv;
    BranchShot cur = *first;
    double ds = opts.ds0;
    for (int step = 0; step < max_steps; ++step) {
        trace.points.push_back(
            {cur.z.l, cur.traj.amplitude(), cur.z.c, cur.z.d});

        if (stop_at_one) {
            const double prev_side = (trace.points.size() >= 2
                                          ? trace.points[trace.points.size() - 2].lambda
                                          : lambda_bif) - 1.0;
            const double cur_side = cur.z.l - 1.0;
            if (prev_side * cur_side <= 0.0) {
                // crossing bracketed: solve at fixed lambda = 1 from the
                // interpolated initial data
                const auto& p0 = trace.points.size() >= 2
                                     ? trace.points[trace.points.size() - 2]
                                     : BranchPoint{lambda_bif, 0.0, 0.0, 0.0};
                const double den = cur.z.l - p0.lambda;
                const double t = den != 0.0 ? (1.0 - p0.lambda) / den : 1.0;
                const double c0 = p0.c + t * (cur.z.c - p0.c);
                const double d0 = p0.d + t * (cur.z.d - p0.d);
                const auto f = nl.f;
                ScalarField rhs = [f](double, double u) { return f(u); };
                auto sol = shoot_newton(rhs, spec, c0, d0, opts.shoot, bks);
                if (sol && sol->nodal == NodalClass{k, nu}) {
                    trace.at_lambda_one = std::move(sol);
                    return trace;
                }
                throw BranchLost(
                    "branch crossed lambda = 1 but the fixed-lambda solve failed");
            }
        }

        if (cur.traj.amplitude() >= opts.amplitude_cap) break;

        Vec3 tangent = cur.z - z_prev;
        const double tn = norm(tangent);
        if (tn <= 0.0) throw BranchLost("continuation tangent collapsed");
        tangent = (1.0 / tn) * tangent;

        bool advanced = false;
        while (ds >= opts.ds_min) {
            auto next = branch_corrector(spec, nl, cur.z + ds * tangent, cur.z, tangent,
                                         ds, opts.shoot, bks);
            if (next && next->z.l > 0.0 &&
                trajectory_nodal_class(next->traj) == NodalClass{k, nu}) {
                z_prev = cur.z;
                cur = std::move(*next);
                ds = std::min(ds * 1.3, opts.ds_max);
                advanced = true;
                break;
            }
            ds *= 0.5;
        }
        if (!advanced)
            throw BranchLost(detail::cat("continuation stalled at lambda=", cur.z.l,
                                         " amplitude=", cur.traj.amplitude()));
    }
    return trace;
}

} // namespace

std::vector<BranchPoint> continue_branch(const ProblemSpec& spec, const Nonlinearity& nl,
                                         int k, int nu, int max_steps,
                                         const ContinuationOptions& opts) {
    if (max_steps < 1) throw InvalidProblem("max_steps must be >= 1");
    return run_continuation(spec, nl, k, nu, max_steps, /*stop_at_one=*/false, opts)
        .points;
}

ShootResult find_nodal(const ProblemSpec& spec, const Nonlinearity& nl, int k, int nu,
                       const ContinuationOptions& opts) {
    validate_nonlinearity(nl);
    if (!nl.f0) throw ConditionFails("nodal search needs a declared f0");

    // sign condition s f(s) > 0 on a log-spaced sample set
    for (int i = 0; i <= 24; ++i) {
        const double mag = std::pow(10.0, -3.0 + 6.0 * i / 24.0);
        for (double s : {mag, -mag})
            if (!(s * nl.f(s) > 0.0))
                throw ConditionFails(detail::cat("sign condition s*f(s) > 0 fails at s=", s));
    }

    const double lambda_k = linear_eigenvalues(spec, k)[static_cast<size_t>(k - 1)];
    double lambda_inf = 0.0;
    for (const auto& he : half_eigenvalues(spec, nl.f_plus_inf, nl.f_minus_inf, k))
        if (he.k == k && he.nu == nu) lambda_inf = he.lambda;
    const double product = (lambda_k / *nl.f0 - 1.0) * (lambda_inf - 1.0);
    if (!(product < 0.0))
        throw ConditionFails(detail::cat(
            "crossing condition fails: (", lambda_k / *nl.f0, " - 1)(", lambda_inf,
            " - 1) = ", product, " >= 0"));

    auto trace = run_continuation(spec, nl, k, nu, /*max_steps=*/2000,
                                  /*stop_at_one=*/true, opts);
    if (!trace.at_lambda_one)
        throw BranchLost("branch never crossed lambda = 1 within the step budget");
    return std::move(*trace.at_lambda_one);
}

} // namespace mpbvp
