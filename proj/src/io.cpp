#include "porpob/io.hpp"

#include "porpob/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace porpob {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                            : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_outcome(const std::string& field, std::size_t line) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw FormatError("outcome '" + field + "' is not a number", line);
    }
    if (!std::isfinite(v)) throw FormatError("outcome '" + field + "' is not finite", line);
    return v;
}

std::optional<int> parse_int_label(const std::string& s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// Skips blank lines; returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) return true;
    }
    return false;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return in;
}

} // namespace

ActionId LabeledStudy::resolve(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), trim(label));
    if (it == labels.end()) throw KeyError("unknown action label '" + label + "'");
    return ActionId(static_cast<int>(it - labels.begin()) + 1);
}

LabeledStudy parse_study_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw FormatError("empty input: missing 'action,outcome' header");
    auto header = split_fields(line);
    for (auto& h : header) std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return std::tolower(c); });
    if (header != std::vector<std::string>{"action", "outcome"}) {
        throw FormatError("missing 'action,outcome' header", line_no);
    }

    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;
    while (next_line(in, line, line_no)) {
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw FormatError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
        }
        if (fields[0].empty()) throw FormatError("empty action label", line_no);
        const double y = parse_outcome(fields[1], line_no);
        auto it = std::find(labels.begin(), labels.end(), fields[0]);
        if (it == labels.end()) {
            labels.push_back(fields[0]);
            values.emplace_back();
            it = labels.end() - 1;
        }
        values[static_cast<std::size_t>(it - labels.begin())].push_back(y);
    }
    if (labels.size() < 2) {
        throw ValidationError("need at least 2 distinct actions, found " + std::to_string(labels.size()));
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (values[i].size() < 2) {
            throw ValidationError("action '" + labels[i] + "' has " + std::to_string(values[i].size()) +
                                  " row(s); at least 2 are required");
        }
    }

    // Integer labels that already spell out 1..K keep their numbering.
    std::vector<std::size_t> slot(labels.size());
    bool numeric = true;
    std::vector<bool> used(labels.size(), false);
    for (std::size_t i = 0; i < labels.size() && numeric; ++i) {
        const auto v = parse_int_label(labels[i]);
        if (!v || *v < 1 || *v > static_cast<int>(labels.size()) || used[static_cast<std::size_t>(*v - 1)]) {
            numeric = false;
        } else {
            used[static_cast<std::size_t>(*v - 1)] = true;
            slot[i] = static_cast<std::size_t>(*v - 1);
        }
    }
    if (!numeric) {
        for (std::size_t i = 0; i < labels.size(); ++i) slot[i] = i;
    }

    std::vector<std::string> ordered(labels.size());
    std::vector<ArmSamples> arms;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ordered[slot[i]] = labels[i];
        arms.emplace_back(ActionId(static_cast<int>(slot[i]) + 1), std::move(values[i]));
    }
    return LabeledStudy{StudyData(std::move(arms)), std::move(ordered)};
}

LabeledStudy load_csv(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    return parse_study_csv(in);
}

void write_study_csv(std::ostream& out, const LabeledStudy& data) {
    out << "action,outcome\n";
    for (const ArmSamples& arm : data.study.arms()) {
        for (double v : arm.values()) out << data.label(arm.action()) << ',' << json(v).dump() << '\n';
    }
}

PoMatrix parse_po_matrix_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw FormatError("empty input: missing 'id,...' header");
    auto header = split_fields(line);
    if (header.size() < 3 || header.front() != "id") {
        throw FormatError("header must be 'id,<action1>,<action2>,...' with at least two actions", line_no);
    }
    std::vector<std::string> labels(header.begin() + 1, header.end());
    std::vector<std::vector<double>> rows;
    while (next_line(in, line, line_no)) {
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw FormatError("expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        std::vector<double> row;
        for (std::size_t j = 1; j < fields.size(); ++j) row.push_back(parse_outcome(fields[j], line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("potential-outcome table has no rows");
    return PoMatrix(std::move(rows), std::move(labels));
}

PoMatrix load_po_matrix_csv(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    return parse_po_matrix_csv(in);
}

// ---------------------------------------------------------------------------
// Result documents

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json record_to_json(const MetricRecord& r) {
    json j;
    j["metric"] = r.metric;
    j["arguments"] = r.arguments.is_null() ? json::object() : r.arguments;
    j["point"] = optional_number(r.point);
    j["interval"] = r.interval ? json{{"lower", r.interval->lower}, {"upper", r.interval->upper}} : json(nullptr);
    j["ci"] = r.ci ? json{{"lower", r.ci->lower},
                          {"upper", r.ci->upper},
                          {"level", r.ci->level},
                          {"replicates", r.ci->replicates},
                          {"replicate_mean", r.ci->replicate_mean}}
                   : json(nullptr);
    j["tied"] = r.tied;
    j["extra"] = r.extra;
    return j;
}

void expect(std::vector<std::string>& errs, bool ok, const std::string& what) {
    if (!ok) errs.push_back(what);
}

void check_number_object(std::vector<std::string>& errs, const json& j, const std::string& where,
                         std::initializer_list<const char*> keys) {
    if (j.is_null()) return;
    if (!j.is_object()) {
        errs.push_back(where + " must be an object or null");
        return;
    }
    for (const char* k : keys) expect(errs, j.contains(k) && j[k].is_number(), where + "." + k + " must be a number");
}

} // namespace

json to_json(const ResultDocument& doc) {
    json j;
    j["tool"] = doc.tool;
    j["version"] = doc.version;
    j["command"] = doc.command;
    j["seed"] = doc.seed ? json(*doc.seed) : json(nullptr);
    j["config"] = doc.config.is_null() ? json::object() : doc.config;
    j["records"] = json::array();
    for (const auto& r : doc.records) j["records"].push_back(record_to_json(r));
    return j;
}

std::vector<std::string> validate_result_json(const json& j) {
    std::vector<std::string> errs;
    if (!j.is_object()) return {"document must be an object"};
    for (const char* k : {"tool", "version", "command"}) {
        expect(errs, j.contains(k) && j[k].is_string(), std::string(k) + " must be a string");
    }
    expect(errs, j.contains("seed") && (j["seed"].is_null() || j["seed"].is_number_unsigned()),
           "seed must be an unsigned integer or null");
    expect(errs, j.contains("config") && j["config"].is_object(), "config must be an object");
    if (!j.contains("records") || !j["records"].is_array()) {
        errs.push_back("records must be an array");
        return errs;
    }
    std::size_t i = 0;
    for (const json& r : j["records"]) {
        const std::string where = "records[" + std::to_string(i++) + "]";
        if (!r.is_object()) {
            errs.push_back(where + " must be an object");
            continue;
        }
        expect(errs, r.contains("metric") && r["metric"].is_string(), where + ".metric must be a string");
        expect(errs, r.contains("arguments") && r["arguments"].is_object(), where + ".arguments must be an object");
        expect(errs, r.contains("point") && (r["point"].is_null() || r["point"].is_number()),
               where + ".point must be a number or null");
        expect(errs, r.contains("interval"), where + ".interval is required");
        expect(errs, r.contains("ci"), where + ".ci is required");
        if (r.contains("interval")) {
            check_number_object(errs, r["interval"], where + ".interval", {"lower", "upper"});
            if (r["interval"].is_object() && r["interval"].value("lower", 0.0) > r["interval"].value("upper", 1.0)) {
                errs.push_back(where + ".interval has lower > upper");
            }
        }
        if (r.contains("ci")) {
            check_number_object(errs, r["ci"], where + ".ci", {"lower", "upper", "level", "replicates", "replicate_mean"});
        }
        expect(errs, r.contains("tied") && r["tied"].is_number_unsigned(), where + ".tied must be an unsigned integer");
        expect(errs, r.contains("extra") && r["extra"].is_object(), where + ".extra must be an object");
    }
    return errs;
}

ResultDocument document_from_json(const json& j) {
    const auto errs = validate_result_json(j);
    if (!errs.empty()) throw FormatError("invalid result document: " + errs.front());
    ResultDocument doc;
    doc.tool = j["tool"].get<std::string>();
    doc.version = j["version"].get<std::string>();
    doc.command = j["command"].get<std::string>();
    if (!j["seed"].is_null()) doc.seed = j["seed"].get<std::uint64_t>();
    doc.config = j["config"];
    for (const json& r : j["records"]) {
        MetricRecord m;
        m.metric = r["metric"].get<std::string>();
        m.arguments = r["arguments"];
        if (!r["point"].is_null()) m.point = r["point"].get<double>();
        if (!r["interval"].is_null()) m.interval = IntervalEstimate{r["interval"]["lower"], r["interval"]["upper"]};
        if (!r["ci"].is_null()) {
            const json& c = r["ci"];
            m.ci = MetricRecord::Ci{c["lower"], c["upper"], c["level"], c["replicates"], c["replicate_mean"]};
        }
        m.tied = r["tied"].get<std::size_t>();
        m.extra = r["extra"];
        doc.records.push_back(std::move(m));
    }
    return doc;
}

std::string dump_canonical(const ResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

void write_results(const ResultDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << dump_canonical(doc);
    if (!out) throw ValidationError("failed while writing '" + path.string() + "'");
}

ResultDocument read_results(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("result file is not JSON: ") + e.what());
    }
    return document_from_json(j);
}

} // namespace porpob
