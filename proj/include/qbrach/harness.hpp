#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qbrach/bloch.hpp"

namespace qbrach {

/// Config problems carry the offending key path (e.g. "parameters.deltaE").
struct ValidationError : std::runtime_error {
    std::string key;
    ValidationError(std::string key_, const std::string& what_)
        : std::runtime_error(key_ + ": " + what_), key(std::move(key_)) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Evolve, Passage, RoundTrip, PtSweep, Optimize };
enum class OutputFormat { Csv, Json };

const char* kind_name(ScenarioKind k);
const char* format_name(OutputFormat f);

struct OutputSpec {
    std::string path{};  // empty = stdout
    OutputFormat format = OutputFormat::Csv;
};

/// A fully resolved experiment description. Loaded from a JSON document
/// { "kind": ..., "parameters": {...}, "output": {...} } with defaults
/// filled in (steps = 10^4, t_max = two rotation periods, poles as
/// endpoints). Runs are deterministic functions of this struct.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::PtSweep;

    double delta_e = 1.0;
    double o0 = 0.0;
    double theta = 0.0;
    Vec3 p_initial{0.0, 0.0, 1.0};
    Vec3 p_final{0.0, 0.0, -1.0};
    int grid = 16;
    int steps = 10000;
    double t_max = 0.0;      // meaningful when !t_max_auto
    bool t_max_auto = true;  // 4*pi/gap of the Hamiltonian at hand
    std::uint64_t seed = 0;  // reserved for randomized grids; part of the digest

    // pt-sweep, alpha parameterization (primary mode).
    double alpha_min = 0.0;
    double alpha_max = 1.5;

    // pt-sweep, raw-family parameterization: fixed (r, s), grid over theta.
    // Crosses the exceptional point when r >= s, exercising error rows.
    bool pt_raw = false;
    double pt_r = 0.0;
    double pt_s = 1.0;
    double pt_theta_min = 0.0;
    double pt_theta_max = 6.283185307179586;

    OutputSpec output{};
};

/// One table cell: empty (error rows), number, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct SweepMetadata {
    std::string version;
    std::string config_digest;
    std::string kind;
};

struct SweepResult {
    SweepMetadata metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Parses and validates a JSON config document. Unknown kinds, missing or
/// out-of-range values raise ValidationError naming the key.
ScenarioConfig load_config(const std::string& text);

/// Stable canonical dump of a resolved config; its FNV-1a hash is the digest.
std::string canonical_config_json(const ScenarioConfig& cfg);

/// Executes the scenario. Rows are computed independently (in parallel) and
/// ordered by grid index; per-row failures become error-tagged rows instead
/// of aborting the sweep. Scenario-level failures (e.g. degenerate inputs to
/// the optimizer) propagate.
SweepResult run_scenario(const ScenarioConfig& cfg);

/// Serializes a result. CSV: RFC-4180 quoting, header row, numbers at 17
/// significant digits. JSON: stable key order, exact numeric round-trip.
/// Byte-identical for identical inputs.
std::string emit(const SweepResult& result, OutputFormat format);

/// emit() to spec.path (stdout when empty). Unwritable path -> IoError.
void write_output(const SweepResult& result, const OutputSpec& spec);

/// load_config + run_scenario + emit in one step, for bindings and tests.
std::string run_config(const std::string& config_text);

}  // namespace qbrach
