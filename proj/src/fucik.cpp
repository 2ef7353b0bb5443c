#include "mpbvp/fucik.hpp"

#include <algorithm>
#include <cmath>

#include "strcat.hpp"

namespace mpbvp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw InvalidProblem("theta grid is empty");
    for (double t : grid)
        if (!(t > 0.0) || !(t < kPi / 2.0))
            throw InvalidProblem(
                detail::cat("theta sample ", t, " outside (0, pi/2)"));
}

} // namespace

std::vector<double> default_theta_grid(int n) {
    if (n < 3) throw InvalidProblem("theta grid needs at least 3 points");
    const double lo = 0.02, hi = kPi / 2.0 - 0.02;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::vector<double> grid(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) // Chebyshev extrema, ascending
        grid[static_cast<size_t>(i)] =
            mid - half * std::cos(kPi * i / (n - 1.0));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<FucikSample> trace_all(const ProblemSpec& spec, int k_max,
                                   std::span<const double> theta_grid,
                                   const SweepOptions& opts) {
    check_grid(theta_grid);
    std::vector<FucikSample> out;
    out.reserve(theta_grid.size() * 2 * static_cast<size_t>(k_max));
    for (double theta : theta_grid) {
        const double a = std::sin(theta), b = std::cos(theta);
        for (const auto& he : half_eigenvalues(spec, a, b, k_max, opts))
            out.push_back({he.k, he.nu, theta, he.lambda, he.lambda * a,
                           he.lambda * b});
    }
    std::sort(out.begin(), out.end(), [](const FucikSample& x, const FucikSample& y) {
        if (x.k != y.k) return x.k < y.k;
        if (x.nu != y.nu) return x.nu > y.nu;
        return x.theta < y.theta;
    });
    return out;
}

std::vector<FucikSample> trace_curve(const ProblemSpec& spec, int k, int nu,
                                     std::span<const double> theta_grid,
                                     const SweepOptions& opts) {
    if (k < 1 || (nu != +1 && nu != -1))
        throw InvalidProblem("trace_curve needs k >= 1 and nu in {+1, -1}");
    check_grid(theta_grid);
    std::vector<FucikSample> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        const double a = std::sin(theta), b = std::cos(theta);
        for (const auto& he : half_eigenvalues(spec, a, b, k, opts))
            if (he.k == k && he.nu == nu)
                out.push_back({he.k, he.nu, theta, he.lambda, he.lambda * a,
                               he.lambda * b});
    }
    return out;
}

std::pair<double, double> diagonal_crossing(const ProblemSpec& spec, int k,
                                            const SweepOptions& opts) {
    if (k < 1) throw InvalidProblem("diagonal_crossing needs k >= 1");
    const double lam = linear_eigenvalues(spec, k, opts)[static_cast<size_t>(k - 1)];
    // cross-check along the diagonal ray: lambda_{k,nu}(r, r) * r = lambda_k
    const double r = std::sin(kPi / 4.0);
    for (const auto& he : half_eigenvalues(spec, r, r, k, opts)) {
        if (he.k != k) continue;
        const double back = he.lambda * r;
        if (std::fabs(back - lam) > 1e-8 * std::max(1.0, lam))
            throw BranchMismatch(detail::cat(
                "diagonal cross-check for k=", k, " gives ", back, " vs ", lam));
    }
    return {lam, lam};
}

} // namespace mpbvp
