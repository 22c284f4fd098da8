#include "porpob/cli.hpp"

#include "porpob/error.hpp"
#include "porpob/inference.hpp"
#include "porpob/statistic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace porpob::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
    }
    return out;
}

// Maps user-facing labels onto action ids.
struct LabelSet {
    std::vector<std::string> names;

    static LabelSet numbered(int k) {
        LabelSet s;
        for (int i = 1; i <= k; ++i) s.names.push_back(std::to_string(i));
        return s;
    }

    int k() const { return static_cast<int>(names.size()); }

    ActionId resolve(const std::string& label) const {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == label) return ActionId(static_cast<int>(i) + 1);
        }
        throw KeyError("unknown action label '" + label + "'");
    }

    Ranking ranking(const std::string& spec) const {
        std::vector<ActionId> ids;
        for (const auto& l : split_list(spec)) ids.push_back(resolve(l));
        return Ranking(std::move(ids), k());
    }

    const std::string& name(ActionId a) const { return names.at(a.index()); }

    json ranking_json(const Ranking& r) const {
        json arr = json::array();
        for (ActionId a : r.order()) arr.push_back(name(a));
        return arr;
    }
};

json grid_json(const GridConfig& g) {
    json j{{"mode", g.mode == GridConfig::Mode::Exact ? "exact" : "uniform"}};
    if (g.mode == GridConfig::Mode::Uniform) {
        j["points"] = g.points;
        j["range"] = g.range ? json::array({g.range->first, g.range->second}) : json("auto");
    }
    return j;
}

json selection_json(const Selection& s) {
    json j = json::object();
    if (s.ranking) j["ranking"] = *s.ranking;
    if (s.action) j["action"] = *s.action;
    j["all"] = s.all;
    return j;
}

ResultDocument new_document(const std::string& command) {
    ResultDocument doc;
    doc.version = kToolVersion;
    doc.command = command;
    return doc;
}

MetricRecord roe_record(const LabelSet& labels, ActionId a, double mean) {
    MetricRecord r;
    r.metric = "roe";
    r.arguments = {{"action", labels.name(a)}};
    r.point = mean;
    return r;
}

MetricRecord por_record(const LabelSet& labels, const Ranking& ranking, double value, std::size_t tied,
                        const std::string& metric = "por") {
    MetricRecord r;
    r.metric = metric;
    r.arguments = {{"ranking", labels.ranking_json(ranking)}};
    r.point = value;
    r.tied = tied;
    return r;
}

MetricRecord pob_record(const LabelSet& labels, ActionId a, double value, std::size_t tied,
                        const std::string& metric = "pob") {
    MetricRecord r;
    r.metric = metric;
    r.arguments = {{"action", labels.name(a)}};
    r.point = value;
    r.tied = tied;
    return r;
}

void check_cap(int k, int cap) {
    if (k > cap) {
        throw ValidationError("refusing to enumerate " + std::to_string(k) + "! rankings (cap is K <= " +
                              std::to_string(cap) + ")");
    }
}

bool wants_all(const Selection& s) { return s.all || (!s.ranking && !s.action); }

std::string format_number(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

std::string arguments_text(const json& args) {
    std::string out;
    for (const auto& [key, value] : args.items()) {
        if (!out.empty()) out += ' ';
        out += key + '=';
        if (value.is_array()) {
            std::string list;
            for (const auto& v : value) list += (list.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
            out += "(" + list + ")";
        } else {
            out += value.is_string() ? value.get<std::string>() : value.dump();
        }
    }
    return out;
}

GridConfig parse_grid(const std::string& mode, int points, const std::string& range) {
    GridConfig g;
    if (mode == "exact") {
        g.mode = GridConfig::Mode::Exact;
    } else if (mode == "uniform") {
        g.mode = GridConfig::Mode::Uniform;
        g.points = points;
        if (!range.empty() && range != "auto") {
            const auto parts = split_list(range);
            if (parts.size() != 2) throw UsageError("--grid-range expects 'a,b' or 'auto'");
            try {
                g.range = std::make_pair(std::stod(parts[0]), std::stod(parts[1]));
            } catch (const std::exception&) {
                throw UsageError("--grid-range expects two numbers");
            }
        }
    } else {
        throw UsageError("--grid must be 'exact' or 'uniform'");
    }
    g.validate();
    return g;
}

Distribution distribution_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type")) throw ValidationError(where + " must be an object with a 'type'");
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "uniform") return Distribution::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
        if (type == "normal") return Distribution::normal(j.at("mean").get<double>(), j.at("sd").get<double>());
    } catch (const json::exception& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": unknown distribution type '" + type + "'");
}

json distribution_to_json(const Distribution& d) {
    if (d.kind == Distribution::Kind::Uniform) return {{"type", "uniform"}, {"lo", d.a}, {"hi", d.b}};
    return {{"type", "normal"}, {"mean", d.a}, {"sd", d.b}};
}

Statistic make_statistic(const std::string& name, const LabelSet& labels, const Selection& sel,
                         const GridConfig& grid) {
    const auto kind = Statistic::parse_kind(name);
    if (!kind) throw UsageError("unknown statistic '" + name + "'");
    auto ranking = [&] { return sel.ranking ? labels.ranking(*sel.ranking) : Ranking::identity(labels.k()); };
    auto action = [&] { return sel.action ? labels.resolve(*sel.action) : ActionId(1); };
    switch (*kind) {
    case Statistic::Kind::Por:
        return Statistic::por(ranking());
    case Statistic::Kind::PorUpper:
        return Statistic::por_upper(ranking(), grid);
    case Statistic::Kind::PorLower:
        return Statistic::por_lower(ranking(), grid);
    case Statistic::Kind::Pob:
        return Statistic::pob(action());
    case Statistic::Kind::Roe:
        return Statistic::roe(action());
    case Statistic::Kind::PobUpper:
        return Statistic::pob_upper(action(), grid);
    case Statistic::Kind::PobLower:
        return Statistic::pob_lower(action(), grid);
    }
    throw UsageError("unknown statistic '" + name + "'");
}

json statistic_arguments(const Statistic& s, const LabelSet& labels) {
    if (s.takes_ranking()) return {{"ranking", labels.ranking_json(s.ranking())}};
    return {{"action", labels.name(s.action())}};
}

json summary_json(const ReplicationSummary& s) {
    return {{"mean", s.mean}, {"q_low", s.q_low}, {"q_high", s.q_high}};
}

} // namespace

// ---------------------------------------------------------------------------

nlohmann::json scm_spec_to_json(const ScmSpec& spec) {
    json j;
    j["family"] = family_name(spec.family);
    j["k"] = spec.k;
    if (spec.coefficients.table.empty()) {
        j["coefficients"] = {{"intercept", spec.coefficients.intercept}, {"slope", spec.coefficients.slope}};
    } else {
        j["coefficients"] = spec.coefficients.table;
    }
    j["noise"] = distribution_to_json(spec.noise);
    j["extra_noise"] = spec.extra_noise ? distribution_to_json(*spec.extra_noise) : json(nullptr);
    return j;
}

ScmSpec scm_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("SCM config must be a JSON object");
    ScmSpec spec;
    try {
        const auto family = parse_family(j.at("family").get<std::string>());
        if (!family) throw ValidationError("unknown SCM family '" + j.at("family").get<std::string>() + "'");
        spec.family = *family;
        spec.k = j.at("k").get<int>();
        const json& c = j.at("coefficients");
        if (c.is_array()) {
            spec.coefficients.table = c.get<std::vector<double>>();
        } else {
            spec.coefficients.intercept = c.value("intercept", 0.0);
            spec.coefficients.slope = c.value("slope", 1.0);
        }
        spec.noise = distribution_from_json(j.at("noise"), "noise");
        if (j.contains("extra_noise") && !j["extra_noise"].is_null()) {
            spec.extra_noise = distribution_from_json(j["extra_noise"], "extra_noise");
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed SCM config: ") + e.what());
    }
    spec.validate();
    return spec;
}

ScmSpec load_scm_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open SCM config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("SCM config is not JSON: ") + e.what());
    }
    return scm_spec_from_json(j);
}

ResultDocument cmd_estimate(const EstimateOptions& opt) {
    ResultDocument doc = new_document("estimate");
    doc.config = {{"input", opt.input}, {"oracle", opt.oracle}, {"selection", selection_json(opt.select)}};
    const bool all = wants_all(opt.select);

    if (opt.oracle) {
        const PoMatrix m = load_po_matrix_csv(opt.input);
        const LabelSet labels{m.column_labels()};
        if (all) check_cap(labels.k(), opt.factorial_cap);
        doc.config["rows"] = m.rows();
        doc.config["rows_with_ties"] = m.rows_with_ties();
        for (int a = 1; a <= labels.k(); ++a) doc.records.push_back(roe_record(labels, ActionId(a), m.column_mean(ActionId(a))));
        if (opt.select.ranking) {
            const Ranking r = labels.ranking(*opt.select.ranking);
            const auto e = exact_por(m, r);
            doc.records.push_back(por_record(labels, r, e.value, e.tied_rows));
        }
        if (opt.select.action) {
            const ActionId a = labels.resolve(*opt.select.action);
            const auto e = exact_pob(m, a);
            doc.records.push_back(pob_record(labels, a, e.value, e.tied_rows));
        }
        if (all) {
            for (const Ranking& r : all_rankings(labels.k())) {
                const auto e = exact_por(m, r);
                doc.records.push_back(por_record(labels, r, e.value, e.tied_rows));
            }
            for (int a = 1; a <= labels.k(); ++a) {
                const auto e = exact_pob(m, ActionId(a));
                doc.records.push_back(pob_record(labels, ActionId(a), e.value, e.tied_rows));
            }
        }
        return doc;
    }

    const LabeledStudy data = load_csv(opt.input);
    const LabelSet labels{data.labels};
    const StudyData& study = data.study;
    if (all) check_cap(study.k(), opt.factorial_cap);
    doc.config["k"] = study.k();
    doc.config["labels"] = data.labels;

    const RoeEstimate roe = estimate_roe(study);
    for (ActionId a : study.actions()) doc.records.push_back(roe_record(labels, a, roe.mean(a)));
    if (opt.select.ranking) {
        const auto e = estimate_por(study, labels.ranking(*opt.select.ranking));
        doc.records.push_back(por_record(labels, e.ranking, e.value, e.tied_samples));
    }
    if (opt.select.action) {
        const auto e = estimate_pob(study, labels.resolve(*opt.select.action));
        doc.records.push_back(pob_record(labels, e.action, e.value, e.tied_samples));
    }
    if (all) {
        for (const Ranking& r : all_rankings(study.k())) {
            const auto e = estimate_por(study, r);
            doc.records.push_back(por_record(labels, r, e.value, e.tied_samples));
        }
        for (ActionId a : study.actions()) {
            const auto e = estimate_pob(study, a);
            doc.records.push_back(pob_record(labels, a, e.value, e.tied_samples));
        }
        const auto [best_r, best_por] = best_ranking(study, opt.factorial_cap);
        doc.records.push_back(por_record(labels, best_r, best_por.value, best_por.tied_samples, "argmax_por"));
        const auto [best_a, best_pob] = best_action(study);
        doc.records.push_back(pob_record(labels, best_a, best_pob.value, best_pob.tied_samples, "argmax_pob"));
        MetricRecord top = roe_record(labels, roe.ranking_by_mean.first(), roe.mean(roe.ranking_by_mean.first()));
        top.metric = "argmax_roe";
        top.extra = {{"ranking", labels.ranking_json(roe.ranking_by_mean)}};
        doc.records.push_back(std::move(top));
    }
    return doc;
}

ResultDocument cmd_bounds(const BoundsOptions& opt) {
    ResultDocument doc = new_document("bounds");
    doc.config = {{"input", opt.input}, {"grid", grid_json(opt.grid)}, {"selection", selection_json(opt.select)}};
    const LabeledStudy data = load_csv(opt.input);
    const LabelSet labels{data.labels};
    const StudyData& study = data.study;
    const bool all = wants_all(opt.select);
    if (all) check_cap(study.k(), kDefaultFactorialCap);
    doc.config["k"] = study.k();

    auto add_por = [&](const Ranking& r) {
        MetricRecord rec;
        rec.metric = "por_bounds";
        rec.arguments = {{"ranking", labels.ranking_json(r)}};
        rec.interval = por_bounds(study, r, opt.grid);
        doc.records.push_back(std::move(rec));
    };
    auto add_pob = [&](ActionId a) {
        MetricRecord rec;
        rec.metric = "pob_bounds";
        rec.arguments = {{"action", labels.name(a)}};
        rec.interval = pob_bounds(study, a, opt.grid);
        doc.records.push_back(std::move(rec));
    };
    if (opt.select.ranking) add_por(labels.ranking(*opt.select.ranking));
    if (opt.select.action) add_pob(labels.resolve(*opt.select.action));
    if (all) {
        for (const Ranking& r : all_rankings(study.k())) add_por(r);
        for (ActionId a : study.actions()) add_pob(a);
    }
    return doc;
}

ResultDocument cmd_simulate(const SimulateOptions& opt) {
    ResultDocument doc = new_document("simulate");
    doc.seed = opt.seed;
    doc.config = {{"scm", opt.scm_name},
                  {"spec", scm_spec_to_json(opt.spec)},
                  {"n_per_arm", opt.n_per_arm},
                  {"runs", opt.runs},
                  {"metric", opt.metric},
                  {"selection", selection_json(opt.select)},
                  {"grid", grid_json(opt.grid)}};
    const LabelSet labels = LabelSet::numbered(opt.spec.k);
    const Statistic stat = make_statistic(opt.metric, labels, opt.select, opt.grid);
    const ReplicationSummary s = run_replications(opt.spec, opt.n_per_arm, opt.runs, opt.seed, stat, opt.threads);

    MetricRecord rec;
    rec.metric = stat.name();
    rec.arguments = statistic_arguments(stat, labels);
    rec.point = s.mean;
    rec.extra = {{"q_low", s.q_low}, {"q_high", s.q_high}, {"values", s.values}};
    const auto kind = stat.kind();
    if ((kind == Statistic::Kind::Por || kind == Statistic::Kind::Pob || kind == Statistic::Kind::Roe) &&
        opt.spec.coefficients_injective()) {
        const TruthReport truth = analytic_truth(opt.spec, stat, opt.seed);
        rec.extra["truth"] = truth.value;
        rec.extra["truth_method"] = method_name(truth.method);
        rec.extra["abs_error"] = summary_json(absolute_errors(s, truth.value));
    }
    doc.records.push_back(std::move(rec));
    return doc;
}

ResultDocument cmd_sweep_k(const SweepOptions& opt) {
    ResultDocument doc = new_document("sweep-k");
    doc.seed = opt.seed;
    doc.config = {{"scm", opt.scm_name},
                  {"spec", scm_spec_to_json(opt.spec)},
                  {"k_list", opt.k_list},
                  {"n_per_arm", opt.n_per_arm},
                  {"runs", opt.runs}};
    if (opt.k_list.empty()) throw UsageError("--k-list needs at least one K");
    for (int k : opt.k_list) {
        const ScmSpec spec = opt.spec.with_k(k);
        const LabelSet labels = LabelSet::numbered(k);
        for (const Statistic& stat : {Statistic::por(Ranking::identity(k)), Statistic::pob(ActionId(1))}) {
            const ReplicationSummary s = run_replications(spec, opt.n_per_arm, opt.runs, opt.seed, stat, opt.threads);
            const TruthReport truth = analytic_truth(spec, stat, opt.seed);
            MetricRecord rec;
            rec.metric = stat.name();
            rec.arguments = statistic_arguments(stat, labels);
            rec.arguments["k"] = k;
            rec.point = s.mean;
            rec.extra = {{"q_low", s.q_low},
                         {"q_high", s.q_high},
                         {"truth", truth.value},
                         {"truth_method", method_name(truth.method)},
                         {"abs_error", summary_json(absolute_errors(s, truth.value))}};
            doc.records.push_back(std::move(rec));
        }
    }
    return doc;
}

ResultDocument cmd_bootstrap(const BootstrapOptions& opt) {
    ResultDocument doc = new_document("bootstrap");
    doc.seed = opt.seed;
    doc.config = {{"input", opt.input},
                  {"statistic", opt.statistic},
                  {"selection", selection_json(opt.select)},
                  {"replicates", opt.replicates},
                  {"level", opt.level},
                  {"grid", grid_json(opt.grid)}};
    const LabeledStudy data = load_csv(opt.input);
    const LabelSet labels{data.labels};
    const StudyData& study = data.study;

    std::vector<Statistic> stats;
    if (opt.select.all) {
        check_cap(study.k(), kDefaultFactorialCap);
        for (ActionId a : study.actions()) stats.push_back(Statistic::roe(a));
        for (const Ranking& r : all_rankings(study.k())) stats.push_back(Statistic::por(r));
        for (ActionId a : study.actions()) stats.push_back(Statistic::pob(a));
    } else {
        stats.push_back(make_statistic(opt.statistic, labels, opt.select, opt.grid));
    }

    const BootstrapConfig cfg{opt.replicates, opt.level, opt.seed};
    const auto results = bootstrap_ci(study, stats, cfg, opt.threads);
    for (std::size_t i = 0; i < stats.size(); ++i) {
        MetricRecord rec;
        rec.metric = stats[i].name();
        rec.arguments = statistic_arguments(stats[i], labels);
        rec.point = results[i].point;
        rec.ci = MetricRecord::Ci{results[i].lower, results[i].upper, opt.level, opt.replicates,
                                  results[i].replicate_mean};
        doc.records.push_back(std::move(rec));
    }
    return doc;
}

std::string render_table(const ResultDocument& doc) {
    std::ostringstream os;
    os << doc.tool << ' ' << doc.command;
    if (doc.seed) os << " (seed " << *doc.seed << ')';
    os << '\n';
    std::vector<std::array<std::string, 4>> rows{{"metric", "arguments", "value", "interval"}};
    for (const auto& r : doc.records) {
        std::string interval;
        if (r.interval) interval = "[" + format_number(r.interval->lower) + ", " + format_number(r.interval->upper) + "]";
        if (r.ci) {
            interval = "[" + format_number(r.ci->lower) + ", " + format_number(r.ci->upper) + "] " +
                       std::to_string(static_cast<int>(std::lround(r.ci->level * 100))) + "% CI";
        }
        if (r.extra.contains("q_low")) {
            interval = "[" + format_number(r.extra["q_low"]) + ", " + format_number(r.extra["q_high"]) + "] runs";
        }
        if (r.extra.contains("abs_error")) {
            interval += "  |err| " + format_number(r.extra["abs_error"]["mean"]) + "  truth " +
                        format_number(r.extra["truth"]);
        }
        if (r.tied) interval += "  ties=" + std::to_string(r.tied);
        rows.push_back({r.metric, arguments_text(r.arguments), r.point ? format_number(*r.point) : "-", interval});
    }
    std::array<std::size_t, 4> width{};
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < 4; ++c) {
            os << std::left << std::setw(static_cast<int>(width[c]) + (c < 3 ? 2 : 0)) << row[c];
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

struct CommonFlags {
    std::string format = "table";
    std::string out;
};

struct GridFlags {
    std::string mode = "exact";
    int points = 100;
    std::string range = "auto";
};

struct ScmFlags {
    std::string name;
    std::string config;
    int k = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--out", f.out, "Write output to this file instead of stdout");
}

void add_grid(CLI::App* cmd, GridFlags& g) {
    cmd->add_option("--grid", g.mode, "Supremum evaluation: exact (pooled sample points) or uniform")
        ->check(CLI::IsMember({"exact", "uniform"}));
    cmd->add_option("--grid-size", g.points, "Number of uniform grid points M");
    cmd->add_option("--grid-range", g.range, "Uniform grid range 'a,b' (default: pooled min/max)");
}

void add_selection(CLI::App* cmd, Selection& s) {
    cmd->add_option_function<std::string>("--ranking", [&s](const std::string& v) { s.ranking = v; },
                                          "Comma-separated action labels, most preferred first");
    cmd->add_option_function<std::string>("--action", [&s](const std::string& v) { s.action = v; }, "Action label");
    cmd->add_flag("--all", s.all, "Report every ranking and every action");
}

void add_scm(CLI::App* cmd, ScmFlags& f, const std::string& default_name) {
    f.name = default_name;
    cmd->add_option("--scm", f.name, "SCM preset: A, B, C, example1, example2, or custom")
        ->check(CLI::IsMember({"A", "B", "C", "example1", "example2", "custom"}));
    cmd->add_option("--scm-config", f.config, "JSON SCM config (implies --scm custom)");
    cmd->add_option("--k", f.k, "Number of actions (overrides the preset)");
}

ScmSpec build_spec(const ScmFlags& f) {
    ScmSpec spec;
    if (!f.config.empty() || f.name == "custom") {
        if (f.config.empty()) throw UsageError("--scm custom requires --scm-config FILE");
        spec = load_scm_config(f.config);
    } else {
        spec = ScmSpec::preset(f.name);
    }
    if (f.k != 0) spec = spec.with_k(f.k);
    return spec;
}

void emit(const ResultDocument& doc, const CommonFlags& f, std::ostream& out) {
    const std::string text = f.format == "json" ? dump_canonical(doc) : render_table(doc);
    if (f.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot write '" + f.out + "'");
    file << text;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counterfactual ranking metrics (RoE, PoR, PoB) over potential outcomes", "porpob"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonFlags common;
    GridFlags grid;
    ScmFlags scm;

    EstimateOptions est;
    auto* c_est = app.add_subcommand("estimate", "Point estimates of RoE, PoR and PoB under rank invariance");
    c_est->add_option("--input", est.input, "CSV input (action,outcome; or id,<actions...> with --oracle)")->required();
    c_est->add_flag("--oracle", est.oracle, "Input is a complete potential-outcome table; compute exact values");
    c_est->add_option("--factorial-cap", est.factorial_cap, "Largest K for which all K! rankings are enumerated");
    add_selection(c_est, est.select);
    add_common(c_est, common);

    BoundsOptions bnd;
    auto* c_bnd = app.add_subcommand("bounds", "Bounds on PoR and PoB without rank invariance");
    c_bnd->add_option("--input", bnd.input, "CSV input (action,outcome)")->required();
    add_selection(c_bnd, bnd.select);
    add_grid(c_bnd, grid);
    add_common(c_bnd, common);

    SimulateOptions sim;
    auto* c_sim = app.add_subcommand("simulate", "Replicate an estimator over simulated studies");
    add_scm(c_sim, scm, "A");
    c_sim->add_option("--n-per-arm", sim.n_per_arm, "Samples per action");
    c_sim->add_option("--runs", sim.runs, "Number of simulated studies");
    c_sim->add_option("--seed", sim.seed, "Master seed");
    c_sim->add_option("--metric", sim.metric, "por, pob, roe, por_upper, por_lower, pob_upper, pob_lower");
    c_sim->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
    add_selection(c_sim, sim.select);
    add_grid(c_sim, grid);
    add_common(c_sim, common);

    SweepOptions sweep;
    auto* c_sweep = app.add_subcommand("sweep-k", "Absolute error of PoR(1..K) and PoB(1) across K");
    add_scm(c_sweep, scm, "C");
    c_sweep->add_option("--k-list", sweep.k_list, "Comma-separated K values")->delimiter(',');
    c_sweep->add_option("--n-per-arm", sweep.n_per_arm, "Samples per action");
    c_sweep->add_option("--runs", sweep.runs, "Number of simulated studies per K");
    c_sweep->add_option("--seed", sweep.seed, "Master seed");
    c_sweep->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");
    add_common(c_sweep, common);

    BootstrapOptions boot;
    auto* c_boot = app.add_subcommand("bootstrap", "Percentile bootstrap confidence intervals");
    c_boot->add_option("--input", boot.input, "CSV input (action,outcome)")->required();
    c_boot->add_option("--statistic", boot.statistic, "por, pob, roe, por_upper, por_lower, pob_upper, pob_lower");
    c_boot->add_option("--bootstrap", boot.replicates, "Number of bootstrap replicates B");
    c_boot->add_option("--level", boot.level, "Confidence level");
    c_boot->add_option("--seed", boot.seed, "Bootstrap seed");
    c_boot->add_option("--threads", boot.threads, "Worker threads (0 = all cores)");
    add_selection(c_boot, boot.select);
    add_grid(c_boot, grid);
    add_common(c_boot, common);

    std::vector<const char*> argv{"porpob"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kOk : kUsage;
        }

        ResultDocument doc;
        if (c_est->parsed()) {
            doc = cmd_estimate(est);
        } else if (c_bnd->parsed()) {
            bnd.grid = parse_grid(grid.mode, grid.points, grid.range);
            doc = cmd_bounds(bnd);
        } else if (c_sim->parsed()) {
            sim.spec = build_spec(scm);
            sim.scm_name = scm.config.empty() ? scm.name : "custom";
            sim.grid = parse_grid(grid.mode, grid.points, grid.range);
            if (!Statistic::parse_kind(sim.metric)) throw UsageError("unknown --metric '" + sim.metric + "'");
            doc = cmd_simulate(sim);
        } else if (c_sweep->parsed()) {
            sweep.spec = build_spec(scm);
            sweep.scm_name = scm.config.empty() ? scm.name : "custom";
            doc = cmd_sweep_k(sweep);
        } else if (c_boot->parsed()) {
            boot.grid = parse_grid(grid.mode, grid.points, grid.range);
            if (!Statistic::parse_kind(boot.statistic)) {
                throw UsageError("unknown --statistic '" + boot.statistic + "'");
            }
            doc = cmd_bootstrap(boot);
        }
        emit(doc, common, out);
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConsistencyError& e) {
        err << "internal consistency error: " << e.what() << '\n';
        return kInternal;
    } catch (const porpob::Error& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

} // namespace porpob::cli
