#pragma once

// Assumption-light bounds on PoR and PoB built from suprema of differences of
// empirical CDFs (Frechet inequalities applied to adjacent pairwise events).

#include "porpob/core.hpp"

#include <optional>
#include <utility>

namespace porpob {

struct GridConfig {
    enum class Mode { Exact, Uniform };

    Mode mode = Mode::Exact;
    int points = 100;                               // uniform mode only, >= 2
    std::optional<std::pair<double, double>> range; // uniform mode; nullopt = pooled study min/max

    static GridConfig exact() { return {}; }
    static GridConfig uniform(int points, std::optional<std::pair<double, double>> range = std::nullopt) {
        return GridConfig{Mode::Uniform, points, range};
    }
    /// Throws ValidationError on M < 2 or an empty/inverted explicit range.
    void validate() const;
};

/// sup_y { F_a(y) - F_b(y) }. Exact mode takes the max over the pooled sample
/// points of both arms; uniform mode takes the max over M equally spaced points
/// of [lo, hi].
double sup_cdf_diff(const StudyData& study, ActionId a, ActionId b, const GridConfig& grid = {});

IntervalEstimate por_bounds(const StudyData& study, const Ranking& ranking, const GridConfig& grid = {});
IntervalEstimate pob_bounds(const StudyData& study, ActionId action, const GridConfig& grid = {});

} // namespace porpob
