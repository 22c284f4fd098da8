#include "porpob/bounds.hpp"

#include "porpob/error.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace porpob {

namespace {

std::pair<double, double> pooled_range(const StudyData& study) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const ArmSamples& arm : study.arms()) {
        lo = std::min(lo, arm.min());
        hi = std::max(hi, arm.max());
    }
    return {lo, hi};
}

// Merge walk over both sorted arms; the difference of two ECDFs only changes at
// sample points, so its supremum is attained at one of them.
double exact_sup(const ArmSamples& a, const ArmSamples& b) {
    const auto va = a.values();
    const auto vb = b.values();
    const double na = static_cast<double>(va.size());
    const double nb = static_cast<double>(vb.size());
    std::size_t ia = 0, ib = 0;
    double best = -std::numeric_limits<double>::infinity();
    while (ia < va.size() || ib < vb.size()) {
        double y;
        if (ib == vb.size() || (ia < va.size() && va[ia] <= vb[ib])) {
            y = va[ia];
        } else {
            y = vb[ib];
        }
        while (ia < va.size() && va[ia] <= y) ++ia;
        while (ib < vb.size() && vb[ib] <= y) ++ib;
        best = std::max(best, static_cast<double>(ia) / na - static_cast<double>(ib) / nb);
    }
    return best;
}

double grid_sup(const ArmSamples& a, const ArmSamples& b, int points, std::pair<double, double> range) {
    const auto [lo, hi] = range;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double y = i == points - 1 ? hi : lo + (static_cast<double>(i) / (points - 1)) * (hi - lo);
        best = std::max(best, ecdf_eval(a, y) - ecdf_eval(b, y));
    }
    return best;
}

// Shared shape of the PoR and PoB bounds over K-1 pairwise events
// "Y[hi_k] > Y[lo_k]".
IntervalEstimate frechet_bounds(const StudyData& study, const std::vector<std::pair<ActionId, ActionId>>& events,
                                const GridConfig& grid) {
    double sum_lower = 0.0;
    double upper = 1.0;
    for (const auto& [hi, lo] : events) {
        sum_lower += sup_cdf_diff(study, lo, hi, grid);
        upper = std::min(upper, 1.0 - sup_cdf_diff(study, hi, lo, grid));
    }
    const double k = static_cast<double>(events.size() + 1);
    double lower = std::max(sum_lower - (k - 2.0), 0.0);
    upper = std::clamp(upper, 0.0, 1.0);
    lower = std::min(lower, 1.0);
    if (lower > upper) {
        throw ConsistencyError("bound estimate has lower " + std::to_string(lower) + " above upper " +
                               std::to_string(upper));
    }
    return IntervalEstimate::checked(lower, upper);
}

} // namespace

void GridConfig::validate() const {
    if (mode == Mode::Exact) return;
    if (points < 2) throw ValidationError("uniform grid needs at least 2 points");
    if (range && !(range->first < range->second)) throw ValidationError("grid range must satisfy a < b");
}

double sup_cdf_diff(const StudyData& study, ActionId a, ActionId b, const GridConfig& grid) {
    grid.validate();
    const ArmSamples& fa = study.arm(a);
    const ArmSamples& fb = study.arm(b);
    if (grid.mode == GridConfig::Mode::Exact) return exact_sup(fa, fb);
    return grid_sup(fa, fb, grid.points, grid.range.value_or(pooled_range(study)));
}

IntervalEstimate por_bounds(const StudyData& study, const Ranking& ranking, const GridConfig& grid) {
    if (ranking.size() != study.k()) {
        throw ValidationError("ranking has " + std::to_string(ranking.size()) + " actions but the study has " +
                              std::to_string(study.k()));
    }
    const auto order = ranking.order();
    std::vector<std::pair<ActionId, ActionId>> events;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) events.emplace_back(order[k], order[k + 1]);
    return frechet_bounds(study, events, grid);
}

IntervalEstimate pob_bounds(const StudyData& study, ActionId action, const GridConfig& grid) {
    study.arm(action);
    std::vector<std::pair<ActionId, ActionId>> events;
    for (ActionId other : study.actions()) {
        if (other != action) events.emplace_back(action, other);
    }
    return frechet_bounds(study, events, grid);
}

} // namespace porpob
