#pragma once

// Point estimates of RoE, PoR and PoB under rank invariance, plus brute-force
// evaluation on complete potential-outcome tables.

#include "porpob/core.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace porpob {

struct PorEstimate {
    Ranking ranking;
    double value = 0.0;
    std::size_t hits = 0;         // base samples satisfying the chain
    std::size_t samples = 0;      // N of the base arm
    std::size_t tied_samples = 0; // base samples rejected only because of an exact tie

    ActionId base_action() const noexcept { return ranking.first(); }
};

struct PobEstimate {
    ActionId action;
    double value = 0.0;
    std::size_t hits = 0;
    std::size_t samples = 0;
    std::size_t tied_samples = 0;
};

struct RoeEstimate {
    std::vector<double> means; // means[i] belongs to action i+1
    Ranking ranking_by_mean;   // descending mean, smaller id first on ties

    double mean(ActionId a) const { return means.at(a.index()); }
};

/// Transport y from the base arm onto the target arm's quantile scale:
/// Q_target(F_base(y)).
double counterfactual_map(const StudyData& study, ActionId base, ActionId target, double y);

PorEstimate estimate_por(const StudyData& study, const Ranking& ranking);
PobEstimate estimate_pob(const StudyData& study, ActionId action);
RoeEstimate estimate_roe(const StudyData& study);

inline constexpr int kDefaultFactorialCap = 8;

/// Exhaustive argmax of estimate_por over all K! rankings. Ties resolve to the
/// lexicographically smallest ranking. Throws ValidationError when K > cap.
std::pair<Ranking, PorEstimate> best_ranking(const StudyData& study, int factorial_cap = kDefaultFactorialCap);

/// Argmax of estimate_pob; ties resolve to the smallest action id.
std::pair<ActionId, PobEstimate> best_action(const StudyData& study);

struct ExactProbability {
    double value = 0.0;
    std::size_t hits = 0;
    std::size_t rows = 0;
    std::size_t tied_rows = 0; // rows that failed only because of a tie
};

/// Fraction of rows with Y[r1] > Y[r2] > ... > Y[rK].
ExactProbability exact_por(const PoMatrix& matrix, const Ranking& ranking);
/// Fraction of rows whose unique maximum sits in column `action`.
ExactProbability exact_pob(const PoMatrix& matrix, ActionId action);

} // namespace porpob
