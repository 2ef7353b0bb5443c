#include "mpbvp/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "strcat.hpp"

namespace mpbvp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

// Half-eigenvalues up to a level whose minimum clears lambda, growing k_max
// geometrically.  Returns the records and the reached k_max.
std::vector<HalfEigenvalue> bracket_records(const ProblemSpec& spec, double a,
                                            double b, double lambda,
                                            const SweepOptions& opts, int& k_top) {
    for (int k_max = 4; k_max <= 256; k_max *= 2) {
        auto recs = half_eigenvalues(spec, a, b, k_max, opts);
        double level_min = kInf;
        for (const auto& r : recs)
            if (r.k == k_max) level_min = std::min(level_min, r.lambda);
        if (level_min > lambda) {
            k_top = k_max;
            return recs;
        }
    }
    throw InvalidProblem(detail::cat(
        "lambda=", lambda, " exceeds the eigenvalue range this classifier covers"));
}

} // namespace

LambdaClassification classify_lambda(const ProblemSpec& spec, double a, double b,
                                     double lambda, const SweepOptions& opts) {
    if (!std::isfinite(lambda)) throw InvalidProblem("lambda must be finite");

    LambdaClassification out;
    if (lambda <= 0.0) {
        // left tail: gap below level 1; B is only defined for lambda > 0
        auto recs = half_eigenvalues(spec, a, b, 1, opts);
        out.kind = IntervalKind::gap;
        out.k = 0;
        out.degree = +1;
        out.b_sign = 0;
        out.lower = -kInf;
        out.upper = std::min(recs[0].lambda, recs[1].lambda);
        return out;
    }

    int k_top = 0;
    const auto recs = bracket_records(spec, a, b, lambda, opts, k_top);

    // nearest record wins before any interval logic
    const double near_band = 1e-8 * std::max(1.0, lambda);
    const HalfEigenvalue* nearest = nullptr;
    double best = kInf;
    for (const auto& r : recs) {
        const double d = std::fabs(r.lambda - lambda);
        if (d < best) {
            best = d;
            nearest = &r;
        }
    }
    if (nearest && best < near_band) {
        out.kind = IntervalKind::near_half_eigenvalue;
        out.k = nearest->k;
        out.nu = nearest->nu;
        out.degree = std::nullopt;
        out.b_sign = 0;
        out.lower = out.upper = nearest->lambda;
        return out;
    }

    // per-level extremes
    std::vector<double> lo(static_cast<size_t>(k_top) + 1, kInf);
    std::vector<double> hi(static_cast<size_t>(k_top) + 1, -kInf);
    for (const auto& r : recs) {
        auto k = static_cast<size_t>(r.k);
        lo[k] = std::min(lo[k], r.lambda);
        hi[k] = std::max(hi[k], r.lambda);
    }

    const JumpingProfile p = profile_for_coefficients(a, b);
    out.b_sign = sgn(b_value(p, std::sqrt(lambda), spec, opts.roots));

    if (lambda < lo[1]) {
        out.kind = IntervalKind::gap;
        out.k = 0;
        out.degree = +1;
        out.lower = -kInf;
        out.upper = lo[1];
        return out;
    }
    for (int k = 1; k <= k_top; ++k) {
        auto ku = static_cast<size_t>(k);
        if (lambda > lo[ku] && lambda < hi[ku]) {
            out.kind = IntervalKind::split;
            out.k = k;
            out.degree = 0;
            out.lower = lo[ku];
            out.upper = hi[ku];
            return out;
        }
        if (k < k_top && lambda > hi[ku] && lambda < lo[ku + 1]) {
            out.kind = IntervalKind::gap;
            out.k = k;
            out.degree = (k % 2 == 0) ? +1 : -1;
            out.lower = hi[ku];
            out.upper = lo[ku + 1];
            return out;
        }
    }
    // bracket_records guarantees lambda < lo[k_top], so this is unreachable
    // unless the record list is inconsistent.
    throw IncompleteSpectrum(detail::cat(
        "classification failed to bracket lambda=", lambda));
}

ForcingFunction nonsolvable_forcing(const ProblemSpec& spec, double a, double b,
                                    double lambda, const SweepOptions& opts) {
    const LambdaClassification cls = classify_lambda(spec, a, b, lambda, opts);
    if (cls.kind != IntervalKind::split)
        throw NotSplitInterval(detail::cat(
            "lambda=", lambda, " is not inside a split interval (B sign ",
            cls.b_sign, ")"));

    const JumpingProfile p = profile_for_coefficients(a, b);
    const double s = std::sqrt(lambda);
    const DeltaRoots roots = delta_roots(p, s, spec, opts.roots);
    const double g_plus = gamma_pm(p, s, roots.delta_plus, spec, +1);
    const double g_minus = gamma_pm(p, s, roots.delta_minus, spec, +1);
    // split interval <=> B > 0 <=> the two residuals share a sign
    const double level = (g_plus > 0.0 && g_minus > 0.0) ? -1.0 : +1.0;

    // switch point: beyond every effective node, and within a safety radius
    // of 1 so the comparison profiles keep one sign on [x0, 1]
    const double max_node = spec.max_effective_node();
    double x0 = std::max(max_node + 0.5 * (1.0 - max_node),
                         1.0 - std::min(0.1, kPi / (4.0 * std::sqrt(
                                                 lambda * std::max(a, b) + 1.0))));

    // The argument additionally needs both branch profiles w(s, delta+-)
    // nonzero on [x0, 1).  Their zeros are isolated (at least a quarter bump
    // apart), so at most one can sit there; step past it if present.
    for (const PhasePoint* d : {&roots.delta_plus, &roots.delta_minus}) {
        const double per = p.period();
        for (double base : {0.0, kPi / p.gamma_plus()}) {
            // zeros of w at x = (base + delta + j per)/s
            const double phase0 = base + d->value();
            const long j_lo = static_cast<long>(std::ceil((s * x0 - phase0) / per)) - 1;
            const long j_hi = static_cast<long>(std::floor((s * 1.0 - phase0) / per)) + 1;
            for (long j = j_lo; j <= j_hi; ++j) {
                const double z = (phase0 + static_cast<double>(j) * per) / s;
                if (z >= x0 && z < 1.0 - 1e-12) x0 = std::max(x0, 0.5 * (z + 1.0));
            }
        }
    }
    return {x0, level};
}

} // namespace mpbvp
