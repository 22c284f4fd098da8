#pragma once

// Command implementations behind the `porpob` executable. Each command returns
// a ResultDocument; run_cli handles flag parsing, rendering and exit codes.

#include "porpob/bounds.hpp"
#include "porpob/estimators.hpp"
#include "porpob/io.hpp"
#include "porpob/scm_sim.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace porpob::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kInternal = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which rankings/actions a command should report.
struct Selection {
    std::optional<std::string> ranking; // comma-separated labels
    std::optional<std::string> action;  // one label
    bool all = false;
};

struct EstimateOptions {
    std::string input;
    bool oracle = false; // input is a potential-outcome table
    Selection select;
    int factorial_cap = kDefaultFactorialCap;
};

struct BoundsOptions {
    std::string input;
    Selection select;
    GridConfig grid;
};

struct SimulateOptions {
    ScmSpec spec;
    std::string scm_name = "A";
    std::size_t n_per_arm = 3000;
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    std::string metric = "por";
    Selection select; // ranking/action as integer ids
    GridConfig grid;
    unsigned threads = 0;
};

struct SweepOptions {
    ScmSpec spec; // K is replaced by each entry of k_list
    std::string scm_name = "C";
    std::vector<int> k_list{3, 5, 10, 20};
    std::size_t n_per_arm = 3000;
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct BootstrapOptions {
    std::string input;
    std::string statistic = "por";
    Selection select;
    std::size_t replicates = 1000;
    double level = 0.95;
    std::uint64_t seed = 1;
    GridConfig grid;
    unsigned threads = 0;
};


ResultDocument cmd_estimate(const EstimateOptions& opt);
ResultDocument cmd_bounds(const BoundsOptions& opt);
ResultDocument cmd_simulate(const SimulateOptions& opt);
ResultDocument cmd_sweep_k(const SweepOptions& opt);
ResultDocument cmd_bootstrap(const BootstrapOptions& opt);

/// Human-readable rendering of a result document.
std::string render_table(const ResultDocument& doc);

nlohmann::json scm_spec_to_json(const ScmSpec& spec);
/// Throws ValidationError on malformed configs.
ScmSpec scm_spec_from_json(const nlohmann::json& j);
ScmSpec load_scm_config(const std::string& path);

/// Full command line entry point (args excludes argv[0]).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace porpob::cli
