#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbrach/harness.hpp"
#include "qbrach/version.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Flags {
    std::string config_path;
    std::optional<double> delta_e, alpha, theta, o0, t_max;
    std::optional<int> steps, grid;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, format;
};

void add_common_options(CLI::App* cmd, Flags& f, bool with_alpha) {
    cmd->add_option("--config", f.config_path, "JSON scenario config; inline flags override its keys");
    cmd->add_option("--delta-e", f.delta_e, "Half the spectral gap (energy units)");
    if (with_alpha) cmd->add_option("--alpha", f.alpha, "Upper end of the alpha sweep (lower end 0)");
    cmd->add_option("--theta", f.theta, "Great-circle selector / grid offset (radians)");
    cmd->add_option("--o0", f.o0, "Trace gauge: sum of the two eigenvalues");
    cmd->add_option("--steps", f.steps, "RK4 steps across the full time window");
    cmd->add_option("--t-max", f.t_max, "Scan horizon (default: two rotation periods)");
    cmd->add_option("--grid", f.grid, "Sweep size (rows), or axis-lattice size for optimize");
    cmd->add_option("--seed", f.seed, "Seed for randomized grids (reserved)");
    cmd->add_option("--out", f.out, "Output path (default: stdout)");
    cmd->add_option("--format", f.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

json build_doc(const std::string& kind, const Flags& f) {
    json doc;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path, std::ios::binary);
        if (!in) throw qbrach::IoError("cannot read config '" + f.config_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        try {
            doc = json::parse(buf.str());
        } catch (const json::parse_error& e) {
            throw qbrach::ValidationError("config", std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw qbrach::ValidationError("config", "top level must be an object");
    }
    doc["kind"] = kind;
    if (!doc.contains("parameters")) doc["parameters"] = json::object();
    json& par = doc["parameters"];
    if (!par.is_object()) throw qbrach::ValidationError("parameters", "must be an object");
    if (f.delta_e) par["deltaE"] = *f.delta_e;
    if (f.alpha) par["alpha_max"] = *f.alpha;
    if (f.theta) par["theta"] = *f.theta;
    if (f.o0) par["o0"] = *f.o0;
    if (f.steps) par["steps"] = *f.steps;
    if (f.t_max) par["t_max"] = *f.t_max;
    if (f.grid) par["grid"] = *f.grid;
    if (f.seed) par["seed"] = *f.seed;
    if (!doc.contains("output")) doc["output"] = json::object();
    json& out = doc["output"];
    if (!out.is_object()) throw qbrach::ValidationError("output", "must be an object");
    if (f.out) out["path"] = *f.out;
    if (f.format) out["format"] = *f.format;
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level minimal-time evolution laboratory"};
    app.set_version_flag("--version", std::string(qbrach::kVersion));
    app.require_subcommand(1);

    const std::pair<const char*, const char*> kinds[] = {
        {"evolve", "Evolve a state along a chosen great circle; exact vs RK4 table"},
        {"passage", "One-way first-arrival times over a grid of great circles"},
        {"round-trip", "There-and-back times over a grid of great circles"},
        {"pt-sweep", "PT-symmetric alpha sweep: split distances, leg and round-trip times"},
        {"optimize", "Brute-force axis search certifying the minimal passage time"},
    };

    Flags flags[5];
    CLI::App* cmds[5];
    for (int i = 0; i < 5; ++i) {
        cmds[i] = app.add_subcommand(kinds[i].first, kinds[i].second);
        add_common_options(cmds[i], flags[i], std::string(kinds[i].first) == "pt-sweep");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    for (int i = 0; i < 5; ++i) {
        if (!cmds[i]->parsed()) continue;
        try {
            const json doc = build_doc(kinds[i].first, flags[i]);
            const qbrach::ScenarioConfig cfg = qbrach::load_config(doc.dump());
            qbrach::write_output(qbrach::run_scenario(cfg), cfg.output);
            return 0;
        } catch (const qbrach::ValidationError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const qbrach::IoError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        } catch (const std::domain_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 1;
}
