// Experiment configuration: one versioned JSON document driving the CLI.
// Inline system specs round-trip through serialization unchanged.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "expanso/catalog.hpp"
#include "expanso/classify.hpp"

namespace expanso {

// Thrown for malformed or invalid configs; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InlineAffine {
    double scale = 1.0;
    double offset = 0.0;
    bool operator==(const InlineAffine&) const = default;
};

struct InlineSystem {
    std::string kind;                 // "affine" | "mod1-matrix" | "alternation"
    std::vector<InlineAffine> cycle;  // affine: per-step coefficients, cycled
    std::string offset_mode = "constant"; // affine: "constant" | "linear-in-n"
    std::vector<std::vector<double>> matrix; // mod1-matrix
    std::vector<InlineSystem> maps;   // alternation: cycled sub-specs
    bool operator==(const InlineSystem&) const = default;
};

struct InlineSpace {
    std::string kind; // metric kind name
    std::vector<std::pair<double, double>> window;
    double spacing = 0.0;
    bool operator==(const InlineSpace&) const = default;
};

struct ExperimentConfig {
    int schema = 1;
    std::string system;                     // catalog name ("" when inline)
    std::optional<InlineSystem> inline_system;
    std::string space;                      // recipe name ("" = default)
    std::optional<InlineSpace> inline_space;
    std::optional<int> horizon;
    std::vector<double> c;                  // empty = entry defaults
    std::vector<int> refinements{2};
    std::uint64_t seed = 0;
    std::optional<bool> bilateral;
    int centers = 64;
    std::string out = ".";

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& cfg);

// Everything a run needs, resolved from the config.
struct RunSetup {
    SeqPtr seq;
    SpacePtr space;
    int horizon = 10;
    bool bilateral = false;
    std::vector<double> c_list;
    std::vector<int> refinements;
    std::uint64_t seed = 0;
    std::size_t centers = 64;
    std::string system_name;
    std::string space_name;
};

RunSetup resolve_config(const ExperimentConfig& cfg);

// Report serialization (report.json payload).
std::string report_to_json(const std::vector<ClassificationReport>& reports);

} // namespace expanso
