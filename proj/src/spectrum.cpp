#include "mpbvp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "strcat.hpp"

namespace mpbvp {

namespace {

constexpr double kPi = 3.14159265358979323846;

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Plus-side residual along one labelled phase branch.
double branch_value(const JumpingProfile& p, const ProblemSpec& spec, double s,
                    int branch, const DeltaRootOptions& ropts,
                    PhasePoint* delta_out = nullptr) {
    const DeltaRoots r = delta_roots(p, s, spec, ropts);
    const PhasePoint& d = branch > 0 ? r.delta_plus : r.delta_minus;
    if (delta_out) *delta_out = d;
    return gamma_pm(p, s, d, spec, +1);
}

// Both branch residuals from a single phase-root solve.
std::pair<double, double> branch_pair(const JumpingProfile& p, const ProblemSpec& spec,
                                      double s, const DeltaRootOptions& ropts) {
    const DeltaRoots r = delta_roots(p, s, spec, ropts);
    return {gamma_pm(p, s, r.delta_plus, spec, +1),
            gamma_pm(p, s, r.delta_minus, spec, +1)};
}

// Bisect the branch residual for s in [lo, hi].  The residual is continuous
// in s (the phase roots move continuously), so bisection across its kinks is
// safe.  Interval shrunk to ~45 ulp-scale widths so the recorded |Gamma| stays
// below the 1e-11 certificate.
double polish_root(const JumpingProfile& p, const ProblemSpec& spec, double lo,
                   double hi, int branch, const DeltaRootOptions& ropts) {
    double flo = branch_value(p, spec, lo, branch, ropts);
    while (hi - lo > 1e-14 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = branch_value(p, spec, mid, branch, ropts);
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

ScanRecord make_record(const JumpingProfile& p, const ProblemSpec& spec, double s_root,
                       int branch, const DeltaRootOptions& ropts) {
    ScanRecord rec;
    rec.s = s_root;
    rec.lambda = s_root * s_root;
    rec.branch_nu = branch;
    rec.residual = std::fabs(branch_value(p, spec, s_root, branch, ropts, &rec.delta));
    try {
        rec.nodal = nodal_class(p, s_root, rec.delta);
    } catch (const BoundaryCriticalPoint&) {
        rec.nodal = std::nullopt;
    }
    return rec;
}

// March both branches across [s_lo, s_hi] with step ds, bisecting every sign
// change.  When stop_k > 0 the sweep ends as soon as a classified root with
// k > stop_k appears (levels are ordered in lambda, so nothing below is lost).
std::vector<ScanRecord> run_sweep(const JumpingProfile& p, const ProblemSpec& spec,
                                  double s_lo, double s_hi, double ds, int stop_k,
                                  const DeltaRootOptions& ropts) {
    std::vector<ScanRecord> out;
    double prev_s = s_lo;
    auto [gp, gm] = branch_pair(p, spec, s_lo, ropts);
    double prev[2] = {gp, gm};

    bool done = false;
    for (double s = s_lo; !done;) {
        s += ds;
        if (s >= s_hi) {
            s = s_hi;
            done = true;
        }
        const auto [cp, cm] = branch_pair(p, spec, s, ropts);
        const double cur[2] = {cp, cm};

        // roots inside (prev_s, s], both branches, ordered by s
        std::vector<std::pair<double, int>> hits;
        for (int bi = 0; bi < 2; ++bi) {
            const int branch = bi == 0 ? +1 : -1;
            if (cur[bi] == 0.0)
                hits.emplace_back(s, branch);
            else if (sgn(prev[bi]) * sgn(cur[bi]) < 0)
                hits.emplace_back(polish_root(p, spec, prev_s, s, branch, ropts), branch);
        }
        std::sort(hits.begin(), hits.end());
        for (const auto& [sr, branch] : hits) {
            out.push_back(make_record(p, spec, sr, branch, ropts));
            if (stop_k > 0 && out.back().nodal && out.back().nodal->k > stop_k) {
                done = true;
                break;
            }
        }
        prev_s = s;
        prev[0] = cur[0];
        prev[1] = cur[1];
    }

    // A root that lands exactly on a sweep sample is seen by both adjacent
    // intervals; collapse such duplicates per branch.
    std::stable_sort(out.begin(), out.end(),
                     [](const ScanRecord& x, const ScanRecord& y) { return x.s < y.s; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ScanRecord& x, const ScanRecord& y) {
                              return x.branch_nu == y.branch_nu &&
                                     std::fabs(x.s - y.s) < 1e-9 * std::max(1.0, y.s);
                          }),
              out.end());
    return out;
}

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw InvalidProblem(detail::cat(name, " must be finite and positive, got ", v));
}

} // namespace

std::vector<HalfEigenvalue> half_eigenvalues(const ProblemSpec& spec, double a,
                                             double b, int k_max,
                                             const SweepOptions& opts) {
    require_positive(a, "a");
    require_positive(b, "b");
    if (k_max < 1) throw InvalidProblem("k_max must be >= 1");
    if (!spec.in_a_plus())
        throw InvalidProblem(
            "eigenvalue enumeration requires the spec inside the positive cone; "
            "use a diagnostic sweep for anything else");

    const JumpingProfile p = profile_for_coefficients(a, b);
    const double max_g = std::max(p.gamma_plus(), p.gamma_minus());
    const double min_g = std::min(p.gamma_plus(), p.gamma_minus());
    const double ds0 = kPi / (8.0 * max_g);
    // Sturm bracket: level k_max lies below s with 2 s min_g / pi > k_max + 2.
    const double s_hi = 1.02 * (k_max + 2) * kPi / (2.0 * min_g);

    std::string issue = "sweep not run";
    for (int attempt = 0; attempt <= opts.max_refinements; ++attempt) {
        const double ds = ds0 / static_cast<double>(1 << attempt);
        // each refinement also starts lower and reaches higher, guarding specs
        // whose first eigenvalue sits below the default start or whose top
        // level lands just past the Sturm bracket
        const double s_lo =
            std::min(opts.s_lo * std::pow(1e-2, attempt), 0.5 * ds);
        const double s_top = s_hi * (1.0 + 0.25 * attempt);

        std::vector<ScanRecord> raw;
        try {
            raw = run_sweep(p, spec, s_lo, s_top, ds, k_max, opts.roots);
        } catch (const RootCountMismatch& e) {
            issue = e.what();
            continue;
        }

        std::map<std::pair<int, int>, const ScanRecord*> by_class;
        bool bad = false;
        for (const auto& rec : raw) {
            if (!rec.nodal) {
                issue = detail::cat("unclassifiable root at s=", rec.s,
                                    " (endpoint critical point)");
                bad = true;
                break;
            }
            if (rec.residual > opts.residual_tol) {
                issue = detail::cat("root residual ", rec.residual, " at s=", rec.s,
                                    " exceeds ", opts.residual_tol);
                bad = true;
                break;
            }
            if (rec.nodal->k > k_max) continue; // early-stop sentinel
            auto key = std::make_pair(rec.nodal->k, rec.nodal->nu);
            if (by_class.count(key)) {
                issue = detail::cat("duplicate record for (k=", key.first,
                                    ", nu=", key.second, ")");
                bad = true;
                break;
            }
            by_class[key] = &rec;
        }
        if (bad) continue;

        for (int k = 1; k <= k_max && !bad; ++k)
            for (int nu : {+1, -1})
                if (!by_class.count({k, nu})) {
                    issue = detail::cat("missing record for (k=", k, ", nu=", nu, ")");
                    bad = true;
                }
        if (bad) continue;

        // strict level ordering: max lambda at k below min lambda at k+1
        for (int k = 1; k < k_max && !bad; ++k) {
            const double top = std::max(by_class[{k, +1}]->lambda,
                                        by_class[{k, -1}]->lambda);
            const double bot = std::min(by_class[{k + 1, +1}]->lambda,
                                        by_class[{k + 1, -1}]->lambda);
            if (!(top < bot)) {
                issue = detail::cat("levels ", k, " and ", k + 1, " not separated");
                bad = true;
            }
        }
        if (bad) continue;

        std::vector<HalfEigenvalue> out;
        out.reserve(by_class.size());
        for (const auto& [key, rec] : by_class)
            out.push_back({key.first, key.second, rec->lambda, rec->s, rec->delta,
                           rec->residual});
        std::sort(out.begin(), out.end(), [](const HalfEigenvalue& x,
                                             const HalfEigenvalue& y) {
            if (x.lambda != y.lambda) return x.lambda < y.lambda;
            if (x.k != y.k) return x.k < y.k;
            return x.nu > y.nu;
        });
        return out;
    }
    throw IncompleteSpectrum(detail::cat(
        "eigenvalue sweep failed after refinement: ", issue));
}

std::vector<double> linear_eigenvalues(const ProblemSpec& spec, int k_max,
                                       const SweepOptions& opts) {
    const auto recs = half_eigenvalues(spec, 1.0, 1.0, k_max, opts);
    std::vector<double> plus(static_cast<size_t>(k_max), 0.0);
    std::vector<double> minus(static_cast<size_t>(k_max), 0.0);
    for (const auto& r : recs)
        (r.nu > 0 ? plus : minus)[static_cast<size_t>(r.k - 1)] = r.lambda;
    std::vector<double> out(static_cast<size_t>(k_max));
    for (int k = 0; k < k_max; ++k) {
        const double hi = std::max(plus[k], minus[k]);
        if (std::fabs(plus[k] - minus[k]) > 1e-9 * hi)
            throw BranchMismatch(detail::cat("branches of linear eigenvalue k=", k + 1,
                                             " differ: ", plus[k], " vs ", minus[k]));
        out[static_cast<size_t>(k)] = 0.5 * (plus[k] + minus[k]);
    }
    return out;
}

std::vector<EigenfunctionSample> eigenfunction_samples(const JumpingProfile& p,
                                                       const HalfEigenvalue& he,
                                                       std::span<const double> grid) {
    // sup over [-1, 1] is attained at an endpoint or a critical point
    double sup = std::max(std::fabs(p.w(he.s, he.delta, -1.0).value),
                          std::fabs(p.w(he.s, he.delta, 1.0).value));
    for (double x : critical_points(p, he.s, he.delta, -1.0, 1.0))
        sup = std::max(sup, std::fabs(p.w(he.s, he.delta, x).value));
    if (sup <= 0.0)
        throw InvalidProblem("eigenfunction record evaluates to zero");
    double scale = 1.0 / sup;
    if (he.nu * p.w(he.s, he.delta, -1.0).derivative < 0.0) scale = -scale;

    std::vector<EigenfunctionSample> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const Eval e = p.w(he.s, he.delta, x);
        out.push_back({x, scale * e.value, scale * e.derivative});
    }
    return out;
}

std::vector<ScanRecord> sweep_scan(const ProblemSpec& spec, double a, double b,
                                   double s_lo, double s_hi, const SweepOptions& opts) {
    require_positive(a, "a");
    require_positive(b, "b");
    if (!(s_lo > 0.0) || !(s_hi > s_lo))
        throw InvalidProblem("scan range must satisfy 0 < s_lo < s_hi");
    if (!spec.minus_side_in_a_plus())
        throw InvalidProblem(
            "diagnostic sweep needs the minus-side coefficients inside the positive cone");
    if (!spec.in_a_plus() && !spec.allow_outside_cone())
        throw InvalidProblem(
            "spec outside the positive cone; set allow_outside_cone to scan anyway");

    const JumpingProfile p = profile_for_coefficients(a, b);
    const double ds = kPi / (8.0 * std::max(p.gamma_plus(), p.gamma_minus()));
    return run_sweep(p, spec, s_lo, s_hi, ds, /*stop_k=*/-1, opts.roots);
}

} // namespace mpbvp
