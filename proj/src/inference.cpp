#include "porpob/inference.hpp"

#include "porpob/error.hpp"
#include "porpob/parallel.hpp"
#include "porpob/rng.hpp"
#include "porpob/scm_sim.hpp"

#include <numeric>

namespace porpob {

void BootstrapConfig::validate() const {
    if (replicates < 1) throw ValidationError("bootstrap needs at least one replicate");
    if (!(level > 0.0 && level < 1.0)) throw ValidationError("confidence level must lie in (0,1)");
}

StudyData resample_study(const StudyData& study, std::uint64_t seed) {
    std::vector<ArmSamples> arms;
    arms.reserve(static_cast<std::size_t>(study.k()));
    for (const ArmSamples& arm : study.arms()) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(arm.action().value)));
        const auto src = arm.values();
        std::vector<double> draw(src.size());
        for (double& v : draw) v = src[rng.below(src.size())];
        arms.emplace_back(arm.action(), std::move(draw));
    }
    return StudyData(std::move(arms));
}

std::vector<BootstrapResult> bootstrap_ci(const StudyData& study, std::span<const Statistic> statistics,
                                          const BootstrapConfig& cfg, unsigned threads) {
    cfg.validate();
    for (const ArmSamples& arm : study.arms()) {
        if (arm.size() < 2) throw ValidationError("bootstrap needs at least 2 samples per arm");
    }
    std::vector<BootstrapResult> out(statistics.size());
    for (std::size_t s = 0; s < statistics.size(); ++s) {
        out[s].point = statistics[s].evaluate(study);
        out[s].replicates.resize(cfg.replicates);
    }
    parallel_for(cfg.replicates, resolve_threads(threads), [&](std::size_t b) {
        const StudyData replicate = resample_study(study, derive_seed(cfg.seed, b));
        for (std::size_t s = 0; s < statistics.size(); ++s) out[s].replicates[b] = statistics[s].evaluate(replicate);
    });
    const double tail = (1.0 - cfg.level) / 2.0;
    for (BootstrapResult& r : out) {
        r.lower = order_quantile(r.replicates, tail);
        r.upper = order_quantile(r.replicates, 1.0 - tail);
        r.replicate_mean = std::accumulate(r.replicates.begin(), r.replicates.end(), 0.0) /
                           static_cast<double>(r.replicates.size());
    }
    return out;
}

BootstrapResult bootstrap_ci(const StudyData& study, const Statistic& statistic, const BootstrapConfig& cfg,
                             unsigned threads) {
    return std::move(bootstrap_ci(study, std::span<const Statistic>(&statistic, 1), cfg, threads).front());
}

} // namespace porpob
