#include "mpbvp/problem_spec.hpp"

#include <algorithm>
#include <cmath>

#include "strcat.hpp"

namespace mpbvp {

namespace {

void normalise_side(std::vector<double>& alpha, std::vector<double>& eta,
                    const char* side) {
    if (alpha.empty() && eta.empty()) {
        alpha.assign(1, 0.0);
        eta.assign(1, 0.0);
        return;
    }
    if (alpha.size() != eta.size())
        throw InvalidProblem(detail::cat(side, " side: alpha has ", alpha.size(),
                                         " entries but eta has ", eta.size()));
    for (double a : alpha)
        if (!std::isfinite(a))
            throw InvalidProblem(detail::cat(side, " side: non-finite coefficient"));
    for (double e : eta)
        if (!std::isfinite(e) || e <= -1.0 || e >= 1.0)
            throw InvalidProblem(
                detail::cat(side, " side: node ", e, " outside (-1, 1)"));
}

// (sum of positive-part check, sum of |alpha|) for one side.
struct SideSums {
    bool nonnegative = true;
    double abs_sum = 0.0;
    double sum = 0.0;
};

SideSums side_sums(const std::vector<double>& alpha) {
    SideSums s;
    for (double a : alpha) {
        if (a < 0.0) s.nonnegative = false;
        s.abs_sum += std::fabs(a);
        s.sum += a;
    }
    return s;
}

} // namespace

ProblemSpec::ProblemSpec(std::vector<double> alpha_minus, std::vector<double> eta_minus,
                         std::vector<double> alpha_plus, std::vector<double> eta_plus,
                         bool allow_outside_cone)
    : am_(std::move(alpha_minus)),
      em_(std::move(eta_minus)),
      ap_(std::move(alpha_plus)),
      ep_(std::move(eta_plus)),
      allow_outside_(allow_outside_cone) {
    normalise_side(am_, em_, "minus");
    normalise_side(ap_, ep_, "plus");

    const SideSums mi = side_sums(am_);
    const SideSums pl = side_sums(ap_);
    minus_in_a_plus_ = mi.nonnegative && mi.sum < 1.0;
    if (mi.nonnegative && pl.nonnegative && mi.sum < 1.0 && pl.sum < 1.0)
        cone_ = ConeStatus::inside_a_plus;
    else if (mi.abs_sum < 1.0 && pl.abs_sum < 1.0)
        cone_ = ConeStatus::inside_a_only;
    else
        cone_ = ConeStatus::outside;
}

ProblemSpec ProblemSpec::dirichlet() {
    return {{0.0}, {0.0}, {0.0}, {0.0}};
}

double ProblemSpec::max_effective_node() const noexcept {
    double m = -1.0;
    for (size_t i = 0; i < am_.size(); ++i)
        if (am_[i] != 0.0) m = std::max(m, em_[i]);
    for (size_t i = 0; i < ap_.size(); ++i)
        if (ap_[i] != 0.0) m = std::max(m, ep_[i]);
    return m;
}

} // namespace mpbvp
