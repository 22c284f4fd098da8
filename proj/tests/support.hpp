#pragma once

// Brute-force reference implementations used as oracles. They deliberately avoid
// the library's sorted-arm machinery: every ECDF is a linear scan.

#include "porpob/core.hpp"
#include "porpob/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using Arms = std::vector<std::vector<double>>; // arms[i] = samples of action i+1

inline std::size_t count_le(const std::vector<double>& v, double y) {
    std::size_t c = 0;
    for (double x : v) c += x <= y ? 1 : 0;
    return c;
}

inline double ecdf(const std::vector<double>& v, double y) {
    return static_cast<double>(count_le(v, y)) / static_cast<double>(v.size());
}

// Order statistic at clamp(floor(n_t * c / n_b) + 1) of the target arm.
inline double mapped(const std::vector<double>& base, const std::vector<double>& target, double y) {
    std::vector<double> t = target;
    std::sort(t.begin(), t.end());
    const std::size_t c = count_le(base, y);
    std::size_t idx = t.size() * c / base.size() + 1;
    idx = std::clamp<std::size_t>(idx, 1, t.size());
    return t[idx - 1];
}

inline double por(const Arms& arms, const std::vector<int>& ranking) {
    const auto& base = arms[ranking[0] - 1];
    std::size_t hits = 0;
    for (double y : base) {
        double prev = y;
        bool ok = true;
        for (std::size_t j = 1; j < ranking.size() && ok; ++j) {
            const double m = mapped(base, arms[ranking[j] - 1], y);
            ok = prev > m;
            prev = m;
        }
        hits += ok ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(base.size());
}

inline double pob(const Arms& arms, int action) {
    const auto& base = arms[action - 1];
    std::size_t hits = 0;
    for (double y : base) {
        bool ok = true;
        for (std::size_t j = 0; j < arms.size() && ok; ++j) {
            if (static_cast<int>(j) + 1 == action) continue;
            ok = y > mapped(base, arms[j], y);
        }
        hits += ok ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(base.size());
}

// sup_y F_a(y) - F_b(y) over the pooled sample points.
inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double best = -2.0;
    for (const auto* arm : {&a, &b}) {
        for (double y : *arm) best = std::max(best, ecdf(a, y) - ecdf(b, y));
    }
    return best;
}

struct Psi {
    double lower;
    double upper;
};

// Sharp bounds on P(Y_a > Y_b) from the two marginals.
inline Psi psi_bounds(const std::vector<double>& a, const std::vector<double>& b) {
    const double lo = std::max(sup_diff(b, a), 0.0);
    const double hi = 1.0 - std::max(sup_diff(a, b), 0.0);
    return {lo, hi};
}

inline porpob::StudyData make_study(const Arms& arms) {
    std::vector<porpob::ArmSamples> v;
    for (std::size_t i = 0; i < arms.size(); ++i) v.emplace_back(porpob::ActionId(static_cast<int>(i) + 1), arms[i]);
    return porpob::StudyData(std::move(v));
}

inline Arms random_arms(std::uint64_t seed, int k, std::size_t lo_n, std::size_t hi_n) {
    porpob::Rng rng(seed);
    Arms arms(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const std::size_t n = lo_n + rng.below(hi_n - lo_n + 1);
        const double shift = rng.uniform(-1.0, 1.0);
        const double scale = rng.uniform(0.5, 2.0);
        for (std::size_t j = 0; j < n; ++j) arms[i].push_back(shift + scale * rng.standard_normal());
    }
    return arms;
}

// Strictly increasing piecewise-linear map with random knots and slopes.
struct PiecewiseLinear {
    std::vector<double> knots;
    std::vector<double> slopes; // slopes[i] applies right of knots[i]; slopes[0] also left of knots[0]
    double offset = 0.0;

    static PiecewiseLinear random(porpob::Rng& rng) {
        PiecewiseLinear g;
        const int pieces = 2 + static_cast<int>(rng.below(5));
        for (int i = 0; i < pieces; ++i) g.knots.push_back(rng.uniform(-3.0, 3.0));
        std::sort(g.knots.begin(), g.knots.end());
        for (int i = 0; i < pieces; ++i) g.slopes.push_back(rng.uniform(0.05, 5.0));
        g.offset = rng.uniform(-10.0, 10.0);
        return g;
    }

    double operator()(double x) const {
        double y = offset;
        if (x <= knots.front()) return y + slopes.front() * (x - knots.front());
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const double right = i + 1 < knots.size() ? knots[i + 1] : INFINITY;
            if (x <= right) return y + slopes[i] * (x - knots[i]);
            y += slopes[i] * (right - knots[i]);
        }
        return y;
    }
};

} // namespace oracle
