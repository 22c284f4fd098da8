#include "porpob/statistic.hpp"

#include "porpob/estimators.hpp"

#include <array>
#include <utility>

namespace porpob {

namespace {

constexpr std::array<std::pair<Statistic::Kind, const char*>, 7> kNames{{
    {Statistic::Kind::Por, "por"},
    {Statistic::Kind::Pob, "pob"},
    {Statistic::Kind::Roe, "roe"},
    {Statistic::Kind::PorUpper, "por_upper"},
    {Statistic::Kind::PorLower, "por_lower"},
    {Statistic::Kind::PobUpper, "pob_upper"},
    {Statistic::Kind::PobLower, "pob_lower"},
}};

} // namespace

bool Statistic::takes_ranking() const noexcept {
    return kind_ == Kind::Por || kind_ == Kind::PorUpper || kind_ == Kind::PorLower;
}

std::string Statistic::name() const {
    for (const auto& [k, n] : kNames) {
        if (k == kind_) return n;
    }
    return "?";
}

std::string Statistic::label() const {
    if (takes_ranking()) return name() + ranking().to_string();
    return name() + "(" + std::to_string(action().value) + ")";
}

std::optional<Statistic::Kind> Statistic::parse_kind(const std::string& name) {
    std::string key = name;
    for (char& c : key) {
        if (c == '-') c = '_';
    }
    for (const auto& [k, n] : kNames) {
        if (key == n) return k;
    }
    return std::nullopt;
}

double Statistic::evaluate(const StudyData& study) const {
    switch (kind_) {
    case Kind::Por:
        return estimate_por(study, ranking()).value;
    case Kind::Pob:
        return estimate_pob(study, action()).value;
    case Kind::Roe:
        study.arm(action());
        return estimate_roe(study).mean(action());
    case Kind::PorUpper:
        return por_bounds(study, ranking(), grid_).upper;
    case Kind::PorLower:
        return por_bounds(study, ranking(), grid_).lower;
    case Kind::PobUpper:
        return pob_bounds(study, action(), grid_).upper;
    case Kind::PobLower:
        return pob_bounds(study, action(), grid_).lower;
    }
    return 0.0;
}

} // namespace porpob
