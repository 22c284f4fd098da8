#pragma once

// Percentile bootstrap with resampling stratified by arm.

#include "porpob/core.hpp"
#include "porpob/statistic.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace porpob {

struct BootstrapConfig {
    std::size_t replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 0;

    void validate() const;
};

struct BootstrapResult {
    double point = 0.0;          // statistic on the original study
    double lower = 0.0;          // order statistic at ceil(B * (1 - level) / 2)
    double upper = 0.0;          // order statistic at ceil(B * (1 + level) / 2)
    double replicate_mean = 0.0;
    std::vector<double> replicates;
};

/// Draws one resampled study: every arm resampled with replacement to its own size.
StudyData resample_study(const StudyData& study, std::uint64_t seed);

BootstrapResult bootstrap_ci(const StudyData& study, const Statistic& statistic, const BootstrapConfig& cfg,
                             unsigned threads = 0);

/// Evaluates several statistics on the same B resampled studies.
std::vector<BootstrapResult> bootstrap_ci(const StudyData& study, std::span<const Statistic> statistics,
                                          const BootstrapConfig& cfg, unsigned threads = 0);

} // namespace porpob
