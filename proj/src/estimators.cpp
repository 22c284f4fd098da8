#include "porpob/estimators.hpp"

#include "porpob/error.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace porpob {

namespace {

void require_ranking_fits(const StudyData& study, const Ranking& ranking) {
    if (ranking.size() != study.k()) {
        throw ValidationError("ranking has " + std::to_string(ranking.size()) + " actions but the study has " +
                              std::to_string(study.k()));
    }
}

enum class Check { Pass, Fail, Tie };

// Walks the base arm once; for every base sample, `check` receives the sample
// value and the base-arm count at or below it.
template <class CheckFn>
void scan_base(const ArmSamples& base, CheckFn&& check, std::size_t& hits, std::size_t& ties) {
    const auto values = base.values();
    const std::size_t n = values.size();
    std::size_t i = 0;
    while (i < n) {
        // All copies of a tied value share one ECDF level.
        std::size_t j = i;
        while (j < n && values[j] == values[i]) ++j;
        const Check c = check(values[i], j);
        if (c == Check::Pass) hits += j - i;
        if (c == Check::Tie) ties += j - i;
        i = j;
    }
}

} // namespace

double counterfactual_map(const StudyData& study, ActionId base, ActionId target, double y) {
    const ArmSamples& from = study.arm(base);
    const ArmSamples& to = study.arm(target);
    return empirical_quantile_ratio(to, from.count_at_or_below(y), from.size());
}

PorEstimate estimate_por(const StudyData& study, const Ranking& ranking) {
    require_ranking_fits(study, ranking);
    const ArmSamples& base = study.arm(ranking.first());
    const auto order = ranking.order();

    std::vector<const ArmSamples*> targets;
    for (std::size_t k = 1; k < order.size(); ++k) targets.push_back(&study.arm(order[k]));

    std::size_t hits = 0, ties = 0;
    scan_base(
        base,
        [&](double y, std::size_t count) {
            double prev = y;
            bool tied = false;
            for (const ArmSamples* t : targets) {
                const double m = empirical_quantile_ratio(*t, count, base.size());
                if (m == prev) {
                    tied = true;
                } else if (!(prev > m)) {
                    return Check::Fail;
                }
                prev = m;
            }
            return tied ? Check::Tie : Check::Pass;
        },
        hits, ties);

    return PorEstimate{ranking, static_cast<double>(hits) / static_cast<double>(base.size()), hits, base.size(),
                       ties};
}

PobEstimate estimate_pob(const StudyData& study, ActionId action) {
    const ArmSamples& base = study.arm(action);
    std::vector<const ArmSamples*> others;
    for (const ArmSamples& a : study.arms()) {
        if (a.action() != action) others.push_back(&a);
    }

    std::size_t hits = 0, ties = 0;
    scan_base(
        base,
        [&](double y, std::size_t count) {
            bool tied = false;
            for (const ArmSamples* t : others) {
                const double m = empirical_quantile_ratio(*t, count, base.size());
                if (m == y) {
                    tied = true;
                } else if (!(y > m)) {
                    return Check::Fail;
                }
            }
            return tied ? Check::Tie : Check::Pass;
        },
        hits, ties);

    return PobEstimate{action, static_cast<double>(hits) / static_cast<double>(base.size()), hits, base.size(),
                       ties};
}

RoeEstimate estimate_roe(const StudyData& study) {
    std::vector<double> means;
    for (const ArmSamples& arm : study.arms()) {
        double sum = 0.0;
        for (double v : arm.values()) sum += v;
        means.push_back(sum / static_cast<double>(arm.size()));
    }
    std::vector<ActionId> order = study.actions();
    std::stable_sort(order.begin(), order.end(),
                     [&](ActionId a, ActionId b) { return means[a.index()] > means[b.index()]; });
    return RoeEstimate{std::move(means), Ranking(std::move(order), study.k())};
}

std::pair<Ranking, PorEstimate> best_ranking(const StudyData& study, int factorial_cap) {
    if (study.k() > factorial_cap) {
        throw ValidationError("refusing to enumerate " + std::to_string(study.k()) +
                              "! rankings (cap is K <= " + std::to_string(factorial_cap) + ")");
    }
    std::optional<PorEstimate> best;
    for (const Ranking& r : all_rankings(study.k())) {
        PorEstimate e = estimate_por(study, r);
        if (!best || e.value > best->value) best = std::move(e);
    }
    return {best->ranking, *best};
}

std::pair<ActionId, PobEstimate> best_action(const StudyData& study) {
    std::optional<PobEstimate> best;
    for (ActionId a : study.actions()) {
        PobEstimate e = estimate_pob(study, a);
        if (!best || e.value > best->value) best = e;
    }
    return {best->action, *best};
}

ExactProbability exact_por(const PoMatrix& matrix, const Ranking& ranking) {
    if (ranking.size() != matrix.k()) {
        throw ValidationError("ranking length does not match matrix width");
    }
    const auto order = ranking.order();
    ExactProbability out;
    out.rows = matrix.rows();
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const auto row = matrix.row(i);
        bool ok = true, tied = false;
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            const double hi = row[order[k].index()];
            const double lo = row[order[k + 1].index()];
            if (hi == lo) {
                tied = true;
            } else if (!(hi > lo)) {
                ok = false;
                break;
            }
        }
        if (ok && !tied) ++out.hits;
        if (ok && tied) ++out.tied_rows;
    }
    out.value = static_cast<double>(out.hits) / static_cast<double>(out.rows);
    return out;
}

ExactProbability exact_pob(const PoMatrix& matrix, ActionId action) {
    if (action.value < 1 || action.value > matrix.k()) {
        throw KeyError("unknown action " + std::to_string(action.value));
    }
    ExactProbability out;
    out.rows = matrix.rows();
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const auto row = matrix.row(i);
        const double y = row[action.index()];
        bool ok = true, tied = false;
        for (int j = 0; j < matrix.k(); ++j) {
            if (j == static_cast<int>(action.index())) continue;
            if (row[j] == y) {
                tied = true;
            } else if (row[j] > y) {
                ok = false;
                break;
            }
        }
        if (ok && !tied) ++out.hits;
        if (ok && tied) ++out.tied_rows;
    }
    out.value = static_cast<double>(out.hits) / static_cast<double>(out.rows);
    return out;
}

} // namespace porpob
