#include "porpob/core.hpp"

#include "porpob/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace porpob {

Ranking::Ranking(std::vector<ActionId> order, int k) : order_(std::move(order)) {
    if (k < 1 || static_cast<int>(order_.size()) != k) {
        throw ValidationError("ranking must list exactly " + std::to_string(k) + " actions, got " +
                              std::to_string(order_.size()));
    }
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (ActionId a : order_) {
        if (a.value < 1 || a.value > k) {
            throw ValidationError("ranking entry " + std::to_string(a.value) + " is outside 1.." +
                                  std::to_string(k));
        }
        if (seen[a.index()]) {
            throw ValidationError("ranking repeats action " + std::to_string(a.value));
        }
        seen[a.index()] = true;
    }
}

Ranking Ranking::from_ints(const std::vector<int>& order, int k) {
    std::vector<ActionId> ids;
    ids.reserve(order.size());
    for (int v : order) ids.emplace_back(v);
    return Ranking(std::move(ids), k);
}

Ranking Ranking::identity(int k) {
    std::vector<int> ids(static_cast<std::size_t>(std::max(k, 0)));
    std::iota(ids.begin(), ids.end(), 1);
    return from_ints(ids, k);
}

std::vector<int> Ranking::to_ints() const {
    std::vector<int> out;
    out.reserve(order_.size());
    for (ActionId a : order_) out.push_back(a.value);
    return out;
}

std::string Ranking::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i) os << ',';
        os << order_[i].value;
    }
    os << ')';
    return os.str();
}

std::vector<Ranking> all_rankings(int k) {
    std::vector<int> ids(static_cast<std::size_t>(k));
    std::iota(ids.begin(), ids.end(), 1);
    std::vector<Ranking> out;
    do {
        out.push_back(Ranking::from_ints(ids, k));
    } while (std::next_permutation(ids.begin(), ids.end()));
    return out;
}

ArmSamples::ArmSamples(ActionId action, std::vector<double> values)
    : action_(action), values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("arm " + std::to_string(action.value) + " has no samples");
    }
    std::stable_sort(values_.begin(), values_.end());
}

std::size_t ArmSamples::count_at_or_below(double y) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), y) - values_.begin());
}

double ArmSamples::order_statistic(std::size_t index) const noexcept {
    index = std::clamp<std::size_t>(index, 1, values_.size());
    return values_[index - 1];
}

double ecdf_eval(const ArmSamples& arm, double y) noexcept {
    return static_cast<double>(arm.count_at_or_below(y)) / static_cast<double>(arm.size());
}

double empirical_quantile(const ArmSamples& arm, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("quantile level must lie in [0,1]");
    }
    // Largest k with k/n <= p, judged by the same division the ECDF uses, so that p = i/n lands on i
    // even when n * (i/n) rounds below i.
    const std::size_t n = arm.size();
    const double dn = static_cast<double>(n);
    auto k = static_cast<std::size_t>(std::floor(dn * p));
    while (k < n && static_cast<double>(k + 1) / dn <= p) ++k;
    while (k > 0 && static_cast<double>(k) / dn > p) --k;
    return arm.order_statistic(k + 1);
}

double empirical_quantile_ratio(const ArmSamples& arm, std::size_t count, std::size_t denominator) {
    if (denominator == 0 || count > denominator) {
        throw DomainError("quantile level must lie in [0,1]");
    }
    return arm.order_statistic(arm.size() * count / denominator + 1);
}

StudyData::StudyData(std::vector<ArmSamples> arms) {
    const int k = static_cast<int>(arms.size());
    if (k < 2) {
        throw ValidationError("a study needs at least 2 actions, got " + std::to_string(k));
    }
    std::sort(arms.begin(), arms.end(),
              [](const ArmSamples& a, const ArmSamples& b) { return a.action() < b.action(); });
    for (int i = 0; i < k; ++i) {
        const ArmSamples& arm = arms[static_cast<std::size_t>(i)];
        if (arm.action().value != i + 1) {
            throw ValidationError("arm ids must be exactly 1.." + std::to_string(k));
        }
        if (arm.size() < 2) {
            throw ValidationError("arm " + std::to_string(i + 1) + " needs at least 2 samples, got " +
                                  std::to_string(arm.size()));
        }
    }
    arms_ = std::move(arms);
}

const ArmSamples& StudyData::arm(ActionId id) const {
    if (!contains(id)) {
        throw KeyError("unknown action " + std::to_string(id.value) + " (study has " + std::to_string(k()) +
                       " actions)");
    }
    return arms_[id.index()];
}

std::vector<ActionId> StudyData::actions() const {
    std::vector<ActionId> out;
    for (int i = 1; i <= k(); ++i) out.emplace_back(i);
    return out;
}

std::size_t StudyData::total_size() const noexcept {
    std::size_t n = 0;
    for (const auto& a : arms_) n += a.size();
    return n;
}

PoMatrix::PoMatrix(std::vector<std::vector<double>> rows, std::vector<std::string> column_labels)
    : rows_(std::move(rows)), labels_(std::move(column_labels)) {
    if (rows_.empty()) throw ValidationError("potential-outcome matrix has no rows");
    k_ = static_cast<int>(rows_.front().size());
    if (k_ < 1) throw ValidationError("potential-outcome matrix has no columns");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != k_) {
        throw ValidationError("column label count does not match matrix width");
    }
    std::vector<double> scratch;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& row = rows_[i];
        if (static_cast<int>(row.size()) != k_) {
            throw ValidationError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(k_));
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw ValidationError("row " + std::to_string(i + 1) + " has a non-finite entry");
        }
        scratch.assign(row.begin(), row.end());
        std::sort(scratch.begin(), scratch.end());
        if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end()) ++tied_rows_;
    }
    if (labels_.empty()) {
        for (int j = 1; j <= k_; ++j) labels_.push_back(std::to_string(j));
    }
}

double PoMatrix::column_mean(ActionId action) const {
    if (action.value < 1 || action.value > k_) {
        throw KeyError("unknown action " + std::to_string(action.value));
    }
    double sum = 0.0;
    for (const auto& row : rows_) sum += row[action.index()];
    return sum / static_cast<double>(rows_.size());
}

IntervalEstimate IntervalEstimate::checked(double lower, double upper) {
    if (!(lower >= 0.0 && upper <= 1.0 && lower <= upper)) {
        std::ostringstream os;
        os.precision(17);
        os << "invalid interval [" << lower << ", " << upper << "]";
        throw ConsistencyError(os.str());
    }
    return IntervalEstimate{lower, upper};
}

} // namespace porpob
