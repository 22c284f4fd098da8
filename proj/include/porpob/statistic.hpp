#pragma once

#include "porpob/bounds.hpp"
#include "porpob/core.hpp"

#include <optional>
#include <string>

namespace porpob {

/// A scalar functional of a StudyData, named the way users request it
/// ("por", "pob", "roe", "por_upper", ...).
class Statistic {
public:
    enum class Kind { Por, Pob, Roe, PorUpper, PorLower, PobUpper, PobLower };

    static Statistic por(Ranking r) { return Statistic(Kind::Por, std::move(r)); }
    static Statistic pob(ActionId a) { return Statistic(Kind::Pob, a); }
    static Statistic roe(ActionId a) { return Statistic(Kind::Roe, a); }
    static Statistic por_upper(Ranking r, GridConfig g = {}) { return Statistic(Kind::PorUpper, std::move(r), g); }
    static Statistic por_lower(Ranking r, GridConfig g = {}) { return Statistic(Kind::PorLower, std::move(r), g); }
    static Statistic pob_upper(ActionId a, GridConfig g = {}) { return Statistic(Kind::PobUpper, a, g); }
    static Statistic pob_lower(ActionId a, GridConfig g = {}) { return Statistic(Kind::PobLower, a, g); }

    Kind kind() const noexcept { return kind_; }
    bool takes_ranking() const noexcept;
    const Ranking& ranking() const { return ranking_.value(); }
    ActionId action() const { return action_.value(); }
    const GridConfig& grid() const noexcept { return grid_; }

    /// "por", "pob", "roe", "por_upper", "por_lower", "pob_upper", "pob_lower".
    std::string name() const;
    /// E.g. "por(1,2,3)" or "pob(2)".
    std::string label() const;
    /// Whether the value is a probability (everything but roe).
    bool is_probability() const noexcept { return kind_ != Kind::Roe; }

    /// Throws KeyError/ValidationError when the arguments do not fit the study.
    double evaluate(const StudyData& study) const;

    static std::optional<Kind> parse_kind(const std::string& name);

private:
    Statistic(Kind k, Ranking r, GridConfig g = {}) : kind_(k), ranking_(std::move(r)), grid_(g) {}
    Statistic(Kind k, ActionId a, GridConfig g = {}) : kind_(k), action_(a), grid_(g) {}

    Kind kind_;
    std::optional<Ranking> ranking_;
    std::optional<ActionId> action_;
    GridConfig grid_;
};

} // namespace porpob
