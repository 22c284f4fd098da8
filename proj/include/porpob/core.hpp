#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace porpob {

/// One of the K candidate actions, numbered 1..K.
struct ActionId {
    int value = 0;

    constexpr ActionId() = default;
    constexpr explicit ActionId(int v) : value(v) {}

    constexpr std::size_t index() const noexcept { return static_cast<std::size_t>(value - 1); }

    friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

/// Strict preference order over all K actions, most preferred first.
class Ranking {
public:
    /// Throws ValidationError unless `order` is a permutation of 1..k.
    Ranking(std::vector<ActionId> order, int k);
    static Ranking from_ints(const std::vector<int>& order, int k);
    /// The ranking (1, 2, ..., k).
    static Ranking identity(int k);

    std::span<const ActionId> order() const noexcept { return order_; }
    ActionId operator[](std::size_t i) const { return order_.at(i); }
    ActionId first() const noexcept { return order_.front(); }
    int size() const noexcept { return static_cast<int>(order_.size()); }
    std::vector<int> to_ints() const;
    std::string to_string() const;

    friend bool operator==(const Ranking&, const Ranking&) = default;
    friend auto operator<=>(const Ranking& a, const Ranking& b) { return a.order_ <=> b.order_; }

private:
    std::vector<ActionId> order_;
};

/// All k! rankings in lexicographic order.
std::vector<Ranking> all_rankings(int k);

/// Outcomes observed under one action, held sorted nondecreasing.
class ArmSamples {
public:
    ArmSamples(ActionId action, std::vector<double> values);

    ActionId action() const noexcept { return action_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const noexcept { return values_.front(); }
    double max() const noexcept { return values_.back(); }

    /// Number of samples <= y.
    std::size_t count_at_or_below(double y) const noexcept;
    /// 1-based order statistic; index clamped to [1, n].
    double order_statistic(std::size_t index) const noexcept;

private:
    ActionId action_;
    std::vector<double> values_;
};

/// Right-continuous empirical CDF of an arm: (#values <= y) / n.
double ecdf_eval(const ArmSamples& arm, double y) noexcept;

/// Order statistic at clamp(floor(n p) + 1, 1, n). Throws DomainError for p outside [0,1].
double empirical_quantile(const ArmSamples& arm, double p);

/// Quantile at the rational level count/denominator, with the index computed in
/// integer arithmetic: clamp(floor(n*count/denominator) + 1, 1, n).
double empirical_quantile_ratio(const ArmSamples& arm, std::size_t count, std::size_t denominator);

/// The full K-arm dataset. Arm i holds the samples for action i+1.
class StudyData {
public:
    /// Arms may be given in any order but must cover exactly 1..K, K >= 2, n >= 2 each.
    explicit StudyData(std::vector<ArmSamples> arms);

    int k() const noexcept { return static_cast<int>(arms_.size()); }
    /// Throws KeyError for ids outside 1..K.
    const ArmSamples& arm(ActionId id) const;
    std::span<const ArmSamples> arms() const noexcept { return arms_; }
    bool contains(ActionId id) const noexcept { return id.value >= 1 && id.value <= k(); }
    std::vector<ActionId> actions() const;
    std::size_t total_size() const noexcept;

private:
    std::vector<ArmSamples> arms_;
};

/// Complete N x K table of potential outcomes (row = subject, column = action).
class PoMatrix {
public:
    PoMatrix(std::vector<std::vector<double>> rows, std::vector<std::string> column_labels = {});

    std::size_t rows() const noexcept { return rows_.size(); }
    int k() const noexcept { return k_; }
    double at(std::size_t row, ActionId action) const { return rows_.at(row).at(action.index()); }
    std::span<const double> row(std::size_t i) const { return rows_.at(i); }
    const std::vector<std::string>& column_labels() const noexcept { return labels_; }
    double column_mean(ActionId action) const;
    /// Rows containing at least one pair of equal entries.
    std::size_t rows_with_ties() const noexcept { return tied_rows_; }

private:
    std::vector<std::vector<double>> rows_;
    std::vector<std::string> labels_;
    int k_ = 0;
    std::size_t tied_rows_ = 0;
};

/// Closed interval [lower, upper] inside [0, 1].
struct IntervalEstimate {
    double lower = 0.0;
    double upper = 1.0;

    /// Throws ConsistencyError unless 0 <= lower <= upper <= 1.
    static IntervalEstimate checked(double lower, double upper);
    bool contains(double v) const noexcept { return lower <= v && v <= upper; }

    friend bool operator==(const IntervalEstimate&, const IntervalEstimate&) = default;
};

} // namespace porpob
