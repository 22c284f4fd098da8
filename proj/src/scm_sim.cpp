#include "porpob/scm_sim.hpp"

#include "porpob/error.hpp"
#include "porpob/estimators.hpp"
#include "porpob/parallel.hpp"
#include "porpob/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace porpob {

void Distribution::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("distribution parameters must be finite");
    if (kind == Kind::Uniform && !(a < b)) throw ValidationError("uniform(lo, hi) needs lo < hi");
    if (kind == Kind::Normal && !(b > 0.0)) throw ValidationError("normal(mean, sd) needs sd > 0");
}

double Distribution::sample(Rng& rng) const {
    if (kind == Kind::Uniform) return rng.uniform(a, b);
    return a + b * rng.standard_normal();
}

double Distribution::mean() const noexcept { return kind == Kind::Uniform ? 0.5 * (a + b) : a; }

double Distribution::prob_positive() const {
    if (kind == Kind::Uniform) return std::clamp(b / (b - a), 0.0, 1.0);
    return 0.5 * std::erfc(-a / (b * std::sqrt(2.0)));
}

std::string Distribution::describe() const {
    std::ostringstream os;
    os << (kind == Kind::Uniform ? "uniform(" : "normal(") << a << ',' << b << ')';
    return os.str();
}

double Coefficients::at(int x) const {
    if (!table.empty()) {
        if (x < 1 || x > static_cast<int>(table.size())) {
            throw ValidationError("coefficient table has no entry for action " + std::to_string(x));
        }
        return table[static_cast<std::size_t>(x - 1)];
    }
    return intercept + slope * static_cast<double>(x);
}

std::string family_name(ScmSpec::Family f) {
    switch (f) {
    case ScmSpec::Family::AdditiveShift:
        return "additive-shift";
    case ScmSpec::Family::ScaledNoise:
        return "scaled-noise";
    case ScmSpec::Family::ScaledNoisePlusIndependent:
        return "scaled-noise-plus-independent";
    }
    return "?";
}

std::optional<ScmSpec::Family> parse_family(const std::string& name) {
    for (auto f : {ScmSpec::Family::AdditiveShift, ScmSpec::Family::ScaledNoise,
                   ScmSpec::Family::ScaledNoisePlusIndependent}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

void ScmSpec::validate() const {
    if (k < 2) throw ValidationError("an SCM needs K >= 2 actions");
    if (!coefficients.table.empty() && static_cast<int>(coefficients.table.size()) != k) {
        throw ValidationError("coefficient table has " + std::to_string(coefficients.table.size()) +
                              " entries but K = " + std::to_string(k));
    }
    for (int x = 1; x <= k; ++x) {
        if (!std::isfinite(coefficients.at(x))) throw ValidationError("coefficients must be finite");
    }
    noise.validate();
    if (family == Family::ScaledNoisePlusIndependent) {
        if (!extra_noise) throw ValidationError("family scaled-noise-plus-independent needs an extra noise term");
        extra_noise->validate();
    } else if (extra_noise) {
        throw ValidationError("extra noise is only used by scaled-noise-plus-independent");
    }
}

double ScmSpec::outcome(int action, double u, double u_extra) const {
    const double c = coefficients.at(action);
    switch (family) {
    case Family::AdditiveShift:
        return c + u;
    case Family::ScaledNoise:
        return c * u;
    case Family::ScaledNoisePlusIndependent:
        return c * u + u_extra;
    }
    return 0.0;
}

bool ScmSpec::coefficients_injective() const {
    std::set<double> seen;
    for (int x = 1; x <= k; ++x) {
        if (!seen.insert(coefficients.at(x)).second) return false;
    }
    return true;
}

ScmSpec ScmSpec::with_k(int new_k) const {
    ScmSpec out = *this;
    out.k = new_k;
    out.validate();
    return out;
}

ScmSpec ScmSpec::preset(const std::string& name, int k) {
    ScmSpec s;
    if (name == "A") {
        s.family = Family::ScaledNoise;
        s.coefficients = {4.0, -1.0, {}};
        s.noise = Distribution::uniform(-0.5, 1.0);
    } else if (name == "B") {
        s.family = Family::ScaledNoisePlusIndependent;
        s.coefficients = {0.0, -1.0, {}};
        // Scale noise is standard normal, so every strict ranking's truth is 0 or 1/2.
        s.noise = Distribution::normal(0.0, 1.0);
        s.extra_noise = Distribution::uniform(-1.0, 1.0);
    } else if (name == "C") {
        s.family = Family::ScaledNoise;
        s.coefficients = {0.0, -1.0, {}};
        s.noise = Distribution::uniform(-1.0, 1.0);
    } else if (name == "example1") {
        s.family = Family::AdditiveShift;
        s.coefficients = {0.0, 1.0, {}};
        // Unit-width noise keeps the arms' supports disjoint, so the (K,...,1) chain holds in every sample.
        s.noise = Distribution::uniform(-0.5, 0.5);
    } else if (name == "example2") {
        // P(U > 0) = 3/5
        s.family = Family::ScaledNoise;
        s.coefficients = {0.0, 1.0, {}};
        s.noise = Distribution::uniform(-2.0, 3.0);
    } else {
        throw ValidationError("unknown SCM preset '" + name + "' (expected A, B, C, example1, example2)");
    }
    s.k = k > 0 ? k : 3;
    s.validate();
    return s;
}

StudyData sample_study(const ScmSpec& spec, std::size_t n_per_arm, std::uint64_t seed) {
    spec.validate();
    if (n_per_arm < 2) throw ValidationError("n_per_arm must be at least 2");
    std::vector<ArmSamples> arms;
    arms.reserve(static_cast<std::size_t>(spec.k));
    for (int x = 1; x <= spec.k; ++x) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(x)));
        std::vector<double> ys(n_per_arm);
        for (double& y : ys) {
            const double u = spec.noise.sample(rng);
            const double u2 = spec.extra_noise ? spec.extra_noise->sample(rng) : 0.0;
            y = spec.outcome(x, u, u2);
        }
        arms.emplace_back(ActionId(x), std::move(ys));
    }
    return StudyData(std::move(arms));
}

PoMatrix sample_po_matrix(const ScmSpec& spec, std::size_t subjects, std::uint64_t seed) {
    spec.validate();
    if (subjects == 0) throw ValidationError("need at least one subject");
    Rng rng(derive_seed(seed, 0));
    std::vector<std::vector<double>> rows(subjects, std::vector<double>(static_cast<std::size_t>(spec.k)));
    for (auto& row : rows) {
        const double u = spec.noise.sample(rng);
        const double u2 = spec.extra_noise ? spec.extra_noise->sample(rng) : 0.0;
        for (int x = 1; x <= spec.k; ++x) row[static_cast<std::size_t>(x - 1)] = spec.outcome(x, u, u2);
    }
    return PoMatrix(std::move(rows));
}

std::string method_name(TruthReport::Method m) {
    return m == TruthReport::Method::ClosedForm ? "closed-form" : "large-N-oracle";
}

namespace {

bool strictly_decreasing(const ScmSpec& spec, std::span<const ActionId> order) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (!(spec.coefficients.at(order[i].value) > spec.coefficients.at(order[i + 1].value))) return false;
    }
    return true;
}

bool strictly_increasing(const ScmSpec& spec, std::span<const ActionId> order) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        if (!(spec.coefficients.at(order[i].value) < spec.coefficients.at(order[i + 1].value))) return false;
    }
    return true;
}

bool is_extreme(const ScmSpec& spec, ActionId a, bool largest) {
    const double c = spec.coefficients.at(a.value);
    for (int x = 1; x <= spec.k; ++x) {
        if (x == a.value) continue;
        const double other = spec.coefficients.at(x);
        if (largest ? !(c > other) : !(c < other)) return false;
    }
    return true;
}

} // namespace

TruthReport analytic_truth(const ScmSpec& spec, const Statistic& metric, std::uint64_t oracle_seed) {
    spec.validate();
    if (!spec.coefficients_injective()) {
        throw ValidationError("coefficients are not injective over 1..K; rankings are not strict");
    }
    TruthReport out{metric.label(), 0.0, TruthReport::Method::ClosedForm};
    const auto kind = metric.kind();
    if (kind != Statistic::Kind::Por && kind != Statistic::Kind::Pob && kind != Statistic::Kind::Roe) {
        throw ValidationError("no population truth is defined for bound statistic " + metric.name());
    }
    if (metric.takes_ranking()) {
        if (metric.ranking().size() != spec.k) throw ValidationError("ranking length does not match K");
    } else if (metric.action().value < 1 || metric.action().value > spec.k) {
        throw KeyError("unknown action " + std::to_string(metric.action().value));
    }

    if (kind == Statistic::Kind::Roe) {
        const double c = spec.coefficients.at(metric.action().value);
        const double eu = spec.noise.mean();
        switch (spec.family) {
        case ScmSpec::Family::AdditiveShift:
            out.value = c + eu;
            break;
        case ScmSpec::Family::ScaledNoise:
            out.value = c * eu;
            break;
        case ScmSpec::Family::ScaledNoisePlusIndependent:
            out.value = c * eu + spec.extra_noise->mean();
            break;
        }
        return out;
    }

    if (spec.family == ScmSpec::Family::ScaledNoisePlusIndependent) {
        const PoMatrix m = sample_po_matrix(spec, kOracleSubjects, oracle_seed);
        out.method = TruthReport::Method::LargeNOracle;
        out.value = kind == Statistic::Kind::Por ? exact_por(m, metric.ranking()).value
                                                 : exact_pob(m, metric.action()).value;
        return out;
    }

    const bool additive = spec.family == ScmSpec::Family::AdditiveShift;
    const double p_pos = additive ? 1.0 : spec.noise.prob_positive();
    const double p_neg = additive ? 0.0 : 1.0 - p_pos;
    if (kind == Statistic::Kind::Por) {
        const auto order = metric.ranking().order();
        out.value = (strictly_decreasing(spec, order) ? p_pos : 0.0) + (strictly_increasing(spec, order) ? p_neg : 0.0);
    } else {
        const ActionId a = metric.action();
        out.value = (is_extreme(spec, a, true) ? p_pos : 0.0) + (is_extreme(spec, a, false) ? p_neg : 0.0);
    }
    return out;
}

double order_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ValidationError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0,1]");
    const double n = static_cast<double>(values.size());
    // The small slack keeps e.g. 1000 * 0.025 at index 25 despite rounding in q.
    auto index = static_cast<std::size_t>(std::ceil(n * q - 1e-9));
    index = std::clamp<std::size_t>(index, 1, values.size());
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(index - 1), values.end());
    return values[index - 1];
}

ReplicationSummary summarize(std::vector<double> values) {
    ReplicationSummary s;
    if (values.empty()) throw ValidationError("cannot summarize zero runs");
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.q_low = order_quantile(values, 0.025);
    s.q_high = order_quantile(values, 0.975);
    s.values = std::move(values);
    return s;
}

ReplicationSummary run_replications(const ScmSpec& spec, std::size_t n_per_arm, std::size_t runs,
                                    std::uint64_t seed, const Statistic& metric, unsigned threads) {
    spec.validate();
    if (runs < 1) throw ValidationError("runs must be at least 1");
    std::vector<double> values(runs);
    parallel_for(runs, resolve_threads(threads), [&](std::size_t r) {
        const StudyData study = sample_study(spec, n_per_arm, derive_seed(seed, r));
        values[r] = metric.evaluate(study);
    });
    return summarize(std::move(values));
}

ReplicationSummary absolute_errors(const ReplicationSummary& s, double truth) {
    std::vector<double> errs;
    errs.reserve(s.values.size());
    for (double v : s.values) errs.push_back(std::abs(v - truth));
    return summarize(std::move(errs));
}

} // namespace porpob
