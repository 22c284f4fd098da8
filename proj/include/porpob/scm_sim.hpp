#pragma once

// Synthetic studies from three structural-equation families with a single
// action-indexed coefficient c(x):
//
//   additive-shift                 Y = c(X) + U
//   scaled-noise                   Y = c(X) * U
//   scaled-noise-plus-independent  Y = c(X) * U + U'
//
// Each arm is drawn independently (randomized assignment), so exogeneity holds
// by construction. The first two families are rank invariant when c is
// injective.

#include "porpob/core.hpp"
#include "porpob/statistic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace porpob {

class Rng;

struct Distribution {
    enum class Kind { Uniform, Normal };

    Kind kind = Kind::Uniform;
    double a = 0.0; // uniform: lo; normal: mean
    double b = 1.0; // uniform: hi; normal: sd

    static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static Distribution normal(double mean, double sd) { return {Kind::Normal, mean, sd}; }

    void validate() const;
    double sample(Rng& rng) const;
    double mean() const noexcept;
    /// P(U > 0); continuous, so equals 1 - P(U < 0).
    double prob_positive() const;
    std::string describe() const;
};

/// c(x) = intercept + slope * x, or an explicit per-action table when one is given.
struct Coefficients {
    double intercept = 0.0;
    double slope = 1.0;
    std::vector<double> table; // table[x-1]; overrides the affine rule when non-empty

    double at(int x) const;
};

struct ScmSpec {
    enum class Family { AdditiveShift, ScaledNoise, ScaledNoisePlusIndependent };

    Family family = Family::ScaledNoise;
    int k = 3;
    Coefficients coefficients;
    Distribution noise;
    std::optional<Distribution> extra_noise; // third family only

    void validate() const;
    /// Structural equation evaluated for one subject.
    double outcome(int action, double u, double u_extra) const;
    bool coefficients_injective() const;
    /// Copy with a different K (explicit coefficient tables must already cover it).
    ScmSpec with_k(int new_k) const;

    /// Presets: "A", "B", "C", "example1", "example2". Throws ValidationError otherwise.
    static ScmSpec preset(const std::string& name, int k = 0);
};

std::string family_name(ScmSpec::Family f);
std::optional<ScmSpec::Family> parse_family(const std::string& name);

/// n_per_arm independent draws for every action. Deterministic in (spec, n, seed).
StudyData sample_study(const ScmSpec& spec, std::size_t n_per_arm, std::uint64_t seed);

/// n subjects with all K potential outcomes computed from shared noise.
PoMatrix sample_po_matrix(const ScmSpec& spec, std::size_t subjects, std::uint64_t seed);

struct TruthReport {
    enum class Method { ClosedForm, LargeNOracle };

    std::string metric; // label of the statistic, e.g. "por(1,2,3)"
    double value = 0.0;
    Method method = Method::ClosedForm;
};

inline constexpr std::size_t kOracleSubjects = 1'000'000;

/// Population value of por/pob/roe under the SCM. Closed forms for the first
/// two families; the third family's por/pob come from exact_por/exact_pob on a
/// kOracleSubjects-row simulated table. Throws ValidationError when c is not
/// injective, or for bound statistics (which have no population "truth").
TruthReport analytic_truth(const ScmSpec& spec, const Statistic& metric, std::uint64_t oracle_seed = 0);

std::string method_name(TruthReport::Method m);

struct ReplicationSummary {
    double mean = 0.0;
    double q_low = 0.0;  // empirical 2.5% quantile
    double q_high = 0.0; // empirical 97.5% quantile
    std::vector<double> values;
};

/// Order statistic at ceil(n q) (1-based, clamped) of an unsorted sample.
double order_quantile(std::vector<double> values, double q);
ReplicationSummary summarize(std::vector<double> values);

/// Simulates `runs` studies (run r uses derive_seed(seed, r)) and evaluates the
/// statistic on each. Independent of thread count.
ReplicationSummary run_replications(const ScmSpec& spec, std::size_t n_per_arm, std::size_t runs,
                                    std::uint64_t seed, const Statistic& metric, unsigned threads = 0);

/// |value - truth| per run, summarized.
ReplicationSummary absolute_errors(const ReplicationSummary& s, double truth);

} // namespace porpob
