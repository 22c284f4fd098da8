#pragma once

#include "porpob/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace porpob {

/// A study loaded from "action,outcome" CSV together with its label map.
struct LabeledStudy {
    StudyData study;
    std::vector<std::string> labels; // labels[i] is the label of action i+1

    /// Throws KeyError for labels that are not in the file.
    ActionId resolve(const std::string& label) const;
    const std::string& label(ActionId a) const { return labels.at(a.index()); }
};

/// Labels become ids 1..K in first-appearance order, except when the labels
/// are exactly the integers 1..K, in which case each label is its own id.
LabeledStudy parse_study_csv(std::istream& in);
LabeledStudy load_csv(const std::filesystem::path& path);
/// Inverse of parse_study_csv (arms written in id order, values sorted).
void write_study_csv(std::ostream& out, const LabeledStudy& data);

/// "id,<label1>,...,<labelK>" header, one row per subject.
PoMatrix parse_po_matrix_csv(std::istream& in);
PoMatrix load_po_matrix_csv(const std::filesystem::path& path);

struct MetricRecord {
    std::string metric;          // por, pob, roe, por_upper, ...
    nlohmann::json arguments;    // e.g. {"ranking": ["B","S","H"]}
    std::optional<double> point;
    std::optional<IntervalEstimate> interval;
    struct Ci {
        double lower = 0.0;
        double upper = 0.0;
        double level = 0.95;
        std::size_t replicates = 0;
        double replicate_mean = 0.0;

        friend bool operator==(const Ci&, const Ci&) = default;
    };
    std::optional<Ci> ci;
    std::size_t tied = 0;        // samples or rows affected by exact ties
    nlohmann::json extra = nlohmann::json::object();

    friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

struct ResultDocument {
    std::string tool = "porpob";
    std::string version;
    std::string command;
    std::optional<std::uint64_t> seed;
    nlohmann::json config = nlohmann::json::object();
    std::vector<MetricRecord> records;

    friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline constexpr const char* kToolVersion = "1.0.0";

nlohmann::json to_json(const ResultDocument& doc);
/// Throws FormatError unless `j` satisfies the result schema.
ResultDocument document_from_json(const nlohmann::json& j);
/// Schema violations, empty when the document is valid.
std::vector<std::string> validate_result_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, shortest round-trip doubles, trailing newline.
std::string dump_canonical(const ResultDocument& doc);
/// Throws ValidationError if the path cannot be written.
void write_results(const ResultDocument& doc, const std::filesystem::path& path);
ResultDocument read_results(const std::filesystem::path& path);

} // namespace porpob
