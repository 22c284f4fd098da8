#include "porpob/cli.hpp"
#include "porpob/io.hpp"
#include "porpob/scm_sim.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace porpob;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (std::filesystem::path(PORPOB_TEST_DATA_DIR) / name).string(); }

json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const auto errs = validate_result_json(j);
    CHECK(errs.empty());
    return j;
}

std::size_t count_metric(const json& j, const std::string& metric) {
    std::size_t n = 0;
    for (const auto& r : j["records"]) n += r["metric"] == metric ? 1 : 0;
    return n;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / ("porpob_cli_" + name);
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST_CASE("estimate --oracle on the student table") {
    const auto j = run_json({"estimate", "--input", data("students.csv"), "--oracle"});
    std::vector<double> pob;
    for (const auto& r : j["records"]) {
        if (r["metric"] == "pob") pob.push_back(r["point"].get<double>());
    }
    CHECK(pob == std::vector<double>{0.125, 0.5, 0.375});
    CHECK(count_metric(j, "por") == 6);
    CHECK(count_metric(j, "roe") == 3);
}

TEST_CASE("estimate --all layout") {
    const auto j = run_json({"estimate", "--input", data("coag.csv"), "--all"});
    CHECK(count_metric(j, "roe") == 3);
    CHECK(count_metric(j, "por") == 6);
    CHECK(count_metric(j, "pob") == 3);
    CHECK(count_metric(j, "argmax_por") == 1);
    CHECK(count_metric(j, "argmax_pob") == 1);
    CHECK(count_metric(j, "argmax_roe") == 1);
}

TEST_CASE("K=2 ranking equals pob through the CLI") {
    const auto path = write_temp("k2.csv", "action,outcome\n1,0.3\n1,1.7\n1,0.9\n2,0.5\n2,1.1\n2,2.0\n2,-0.2\n");
    const auto j = run_json({"estimate", "--input", path, "--ranking", "2,1", "--action", "2"});
    double por = -1, pob = -2;
    for (const auto& r : j["records"]) {
        if (r["metric"] == "por") por = r["point"];
        if (r["metric"] == "pob") pob = r["point"];
    }
    CHECK(por == pob);
    std::filesystem::remove(path);
}

TEST_CASE("labels resolve and errors map to exit codes") {
    const auto ok = run_json({"bounds", "--input", data("coag.csv"), "--ranking", "B,S,H"});
    REQUIRE(ok["records"].size() == 1);
    CHECK(ok["records"][0]["arguments"]["ranking"] == json::array({"B", "S", "H"}));
    CHECK(run({"bounds", "--input", data("coag.csv"), "--ranking", "B,Q,H"}).code == cli::kData);
    CHECK(run({"estimate", "--input", "/nonexistent.csv"}).code == cli::kData);
    CHECK(run({"estimate"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"bounds", "--input", data("coag.csv"), "--grid", "weird"}).code == cli::kUsage);
    CHECK(run({"bounds", "--input", data("coag.csv"), "--grid", "uniform", "--grid-size", "1"}).code == cli::kData);
    CHECK(run({"simulate", "--scm", "custom"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("identical arms give [0,1] bounds through the CLI") {
    const auto path = write_temp("same.csv", "action,outcome\n1,1\n1,2\n2,1\n2,2\n3,1\n3,2\n");
    const auto j = run_json({"bounds", "--input", path, "--all"});
    for (const auto& r : j["records"]) {
        if (r["metric"] != "por_bounds") continue;
        CHECK(r["interval"]["lower"] == 0.0);
        CHECK(r["interval"]["upper"] == 1.0);
    }
    std::filesystem::remove(path);
}

TEST_CASE("every subcommand emits valid, reproducible JSON") {
    const std::vector<std::vector<std::string>> commands{
        {"estimate", "--input", data("coag.csv")},
        {"bounds", "--input", data("coag.csv"), "--grid", "uniform", "--grid-size", "33"},
        {"simulate", "--scm", "A", "--runs", "3", "--n-per-arm", "200", "--seed", "4"},
        {"simulate", "--scm", "B", "--runs", "2", "--n-per-arm", "100", "--metric", "pob_upper", "--action", "1"},
        {"sweep-k", "--k-list", "3,4", "--runs", "2", "--n-per-arm", "100"},
        {"bootstrap", "--input", data("coag.csv"), "--all", "--bootstrap", "50", "--seed", "3"},
    };
    for (const auto& c : commands) {
        auto args = c;
        args.insert(args.end(), {"--format", "json"});
        const auto a = run(args);
        const auto b = run(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(validate_result_json(json::parse(a.out)).empty());
        CHECK(document_from_json(json::parse(a.out)).command == c[0]);
    }
}

TEST_CASE("bootstrap --all follows the application table layout") {
    const auto j = run_json({"bootstrap", "--input", data("coag.csv"), "--all", "--bootstrap", "100"});
    CHECK(count_metric(j, "roe") == 3);
    CHECK(count_metric(j, "por") == 6);
    CHECK(count_metric(j, "pob") == 3);
    for (const auto& r : j["records"]) {
        REQUIRE(r.contains("ci"));
        CHECK(r["ci"]["lower"].get<double>() <= r["ci"]["upper"].get<double>());
        CHECK(r["ci"]["replicates"] == 100);
    }
}

TEST_CASE("simulate reports truth and runs=1 is reproducible") {
    const auto j = run_json({"simulate", "--scm", "C", "--metric", "pob", "--action", "1", "--runs", "1",
                             "--n-per-arm", "500", "--seed", "9"});
    const auto& r = j["records"][0];
    CHECK(r["extra"]["truth"] == 0.5);
    CHECK(r["extra"]["truth_method"] == "closed-form");
    CHECK(r["extra"]["values"].size() == 1);
    CHECK(r["point"] == r["extra"]["values"][0]);
}

TEST_CASE("scm config round trip and custom family") {
    const auto spec = ScmSpec::preset("B", 4);
    const auto back = cli::scm_spec_from_json(cli::scm_spec_to_json(spec));
    CHECK(cli::scm_spec_to_json(back) == cli::scm_spec_to_json(spec));
    const auto path = write_temp("scm.json", R"({"family":"additive-shift","k":3,"coefficients":[0,2,1],
        "noise":{"type":"normal","mean":0,"sd":1}})");
    const auto j = run_json({"simulate", "--scm-config", path, "--runs", "2", "--n-per-arm", "100", "--ranking",
                             "2,3,1"});
    CHECK(j["records"][0]["point"] == 1.0);
    CHECK(j["config"]["scm"] == "custom");
    const auto bad = write_temp("bad.json", R"({"family":"nope","k":3})");
    CHECK(run({"simulate", "--scm-config", bad}).code == cli::kData);
    std::filesystem::remove(path);
    std::filesystem::remove(bad);
}

TEST_CASE("--out writes the file") {
    const auto p = (std::filesystem::temp_directory_path() / "porpob_cli_out.json").string();
    const auto r = run({"estimate", "--input", data("students.csv"), "--oracle", "--format", "json", "--out", p});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(read_results(p).records.size() == 12);
    std::filesystem::remove(p);
}
