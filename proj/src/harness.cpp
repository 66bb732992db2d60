#include "qbrach/harness.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <json.hpp>

#include "qbrach/detail/search.hpp"
#include "qbrach/hermitian.hpp"
#include "qbrach/ptsym.hpp"
#include "qbrach/version.hpp"

namespace qbrach {

namespace {

constexpr double kPi = std::numbers::pi;
using json = nlohmann::ordered_json;

}  // namespace

const char* kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::Evolve: return "evolve";
        case ScenarioKind::Passage: return "passage";
        case ScenarioKind::RoundTrip: return "round-trip";
        case ScenarioKind::PtSweep: return "pt-sweep";
        case ScenarioKind::Optimize: return "optimize";
    }
    return "?";
}

const char* format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

namespace {

ScenarioKind parse_kind(const std::string& s) {
    if (s == "evolve") return ScenarioKind::Evolve;
    if (s == "passage") return ScenarioKind::Passage;
    if (s == "round-trip") return ScenarioKind::RoundTrip;
    if (s == "pt-sweep") return ScenarioKind::PtSweep;
    if (s == "optimize") return ScenarioKind::Optimize;
    throw ValidationError("kind", "unknown kind '" + s + "' (expected evolve, passage, round-trip, pt-sweep or optimize)");
}

double take_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path, "must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(path, "must be finite");
    return v;
}

int take_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ValidationError(path, "must be an integer");
    return j.get<int>();
}

Vec3 take_unit_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw ValidationError(path, "must be an array of 3 numbers");
    Vec3 v{take_number(j[0], path), take_number(j[1], path), take_number(j[2], path)};
    if (std::abs(v.norm() - 1.0) > 1e-6) throw ValidationError(path, "must be a unit vector");
    return v.normalized();
}

bool is_sweep_kind(ScenarioKind k) { return k != ScenarioKind::Optimize; }

void apply_kind_defaults(ScenarioConfig& cfg) {
    switch (cfg.kind) {
        case ScenarioKind::Evolve: cfg.grid = 100; break;
        case ScenarioKind::Passage:
        case ScenarioKind::RoundTrip: cfg.grid = 8; break;
        case ScenarioKind::PtSweep: cfg.grid = 16; break;
        case ScenarioKind::Optimize: cfg.grid = 1000; break;
    }
}

}  // namespace

ScenarioConfig load_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config", "top level must be an object");

    for (const auto& [key, _] : doc.items()) {
        if (key != "kind" && key != "parameters" && key != "output") {
            throw ValidationError(key, "unknown top-level key");
        }
    }

    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        throw ValidationError("kind", "missing or not a string");
    }

    ScenarioConfig cfg;
    cfg.kind = parse_kind(doc["kind"].get<std::string>());
    apply_kind_defaults(cfg);

    bool saw_alpha_key = false;
    bool saw_raw_key = false;

    if (doc.contains("parameters")) {
        const json& par = doc["parameters"];
        if (!par.is_object()) throw ValidationError("parameters", "must be an object");
        for (const auto& [key, val] : par.items()) {
            const std::string path = "parameters." + key;
            if (key == "deltaE") {
                cfg.delta_e = take_number(val, path);
            } else if (key == "o0") {
                cfg.o0 = take_number(val, path);
            } else if (key == "theta") {
                cfg.theta = take_number(val, path);
            } else if (key == "p_initial") {
                cfg.p_initial = take_unit_vec3(val, path);
            } else if (key == "p_final") {
                cfg.p_final = take_unit_vec3(val, path);
            } else if (key == "grid") {
                cfg.grid = take_int(val, path);
            } else if (key == "steps") {
                cfg.steps = take_int(val, path);
                if (cfg.steps < 1) throw ValidationError(path, "must be >= 1");
            } else if (key == "t_max") {
                cfg.t_max = take_number(val, path);
                cfg.t_max_auto = false;
                if (cfg.t_max <= 0.0) throw ValidationError(path, "must be > 0");
            } else if (key == "seed") {
                if (!val.is_number_unsigned()) throw ValidationError(path, "must be a nonnegative integer");
                cfg.seed = val.get<std::uint64_t>();
            } else if (key == "alpha_min" && cfg.kind == ScenarioKind::PtSweep) {
                cfg.alpha_min = take_number(val, path);
                saw_alpha_key = true;
                if (std::abs(cfg.alpha_min) >= kPi / 2.0) throw ValidationError(path, "|alpha| must be < pi/2");
            } else if (key == "alpha_max" && cfg.kind == ScenarioKind::PtSweep) {
                cfg.alpha_max = take_number(val, path);
                saw_alpha_key = true;
                if (std::abs(cfg.alpha_max) >= kPi / 2.0) throw ValidationError(path, "|alpha| must be < pi/2");
            } else if (key == "r" && cfg.kind == ScenarioKind::PtSweep) {
                cfg.pt_r = take_number(val, path);
                saw_raw_key = true;
                if (cfg.pt_r < 0.0) throw ValidationError(path, "must be >= 0");
            } else if (key == "s" && cfg.kind == ScenarioKind::PtSweep) {
                cfg.pt_s = take_number(val, path);
                saw_raw_key = true;
                if (cfg.pt_s <= 0.0) throw ValidationError(path, "must be > 0");
            } else if (key == "theta_min" && cfg.kind == ScenarioKind::PtSweep) {
                cfg.pt_theta_min = take_number(val, path);
                saw_raw_key = true;
            } else if (key == "theta_max" && cfg.kind == ScenarioKind::PtSweep) {
                cfg.pt_theta_max = take_number(val, path);
                saw_raw_key = true;
            } else {
                throw ValidationError(path, std::string("unknown parameter for kind '") + kind_name(cfg.kind) + "'");
            }
        }
    }

    if (cfg.delta_e <= 0.0) throw ValidationError("parameters.deltaE", "must be > 0");
    if (saw_alpha_key && saw_raw_key) {
        throw ValidationError("parameters", "alpha_min/alpha_max and r/s/theta_min/theta_max are mutually exclusive");
    }
    cfg.pt_raw = saw_raw_key;
    if (cfg.alpha_min > cfg.alpha_max) throw ValidationError("parameters.alpha_min", "must be <= alpha_max");
    if (cfg.pt_theta_min > cfg.pt_theta_max) throw ValidationError("parameters.theta_min", "must be <= theta_max");

    if (cfg.kind == ScenarioKind::Optimize) {
        if (cfg.grid < 100) throw ValidationError("parameters.grid", "must be >= 100 for optimize");
    } else if (cfg.grid < 2) {
        throw ValidationError("parameters.grid", "must be >= 2");
    }

    if (cfg.t_max_auto) cfg.t_max = default_t_max(2.0 * cfg.delta_e);

    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (!out.is_object()) throw ValidationError("output", "must be an object");
        for (const auto& [key, val] : out.items()) {
            if (key == "path") {
                if (!val.is_string()) throw ValidationError("output.path", "must be a string");
                cfg.output.path = val.get<std::string>();
            } else if (key == "format") {
                const std::string f = val.is_string() ? val.get<std::string>() : std::string();
                if (f == "csv") cfg.output.format = OutputFormat::Csv;
                else if (f == "json") cfg.output.format = OutputFormat::Json;
                else throw ValidationError("output.format", "must be \"csv\" or \"json\"");
            } else {
                throw ValidationError("output." + key, "unknown output key");
            }
        }
    }

    return cfg;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

std::string canonical_config_json(const ScenarioConfig& cfg) {
    json j;
    j["kind"] = kind_name(cfg.kind);
    json par;
    par["deltaE"] = cfg.delta_e;
    par["o0"] = cfg.o0;
    par["theta"] = cfg.theta;
    par["p_initial"] = vec3_json(cfg.p_initial);
    par["p_final"] = vec3_json(cfg.p_final);
    par["grid"] = cfg.grid;
    par["steps"] = cfg.steps;
    if (cfg.t_max_auto) par["t_max"] = "auto";
    else par["t_max"] = cfg.t_max;
    par["seed"] = cfg.seed;
    if (cfg.kind == ScenarioKind::PtSweep) {
        if (cfg.pt_raw) {
            par["r"] = cfg.pt_r;
            par["s"] = cfg.pt_s;
            par["theta_min"] = cfg.pt_theta_min;
            par["theta_max"] = cfg.pt_theta_max;
        } else {
            par["alpha_min"] = cfg.alpha_min;
            par["alpha_max"] = cfg.alpha_max;
        }
    }
    j["parameters"] = std::move(par);
    j["output"] = {{"path", cfg.output.path}, {"format", format_name(cfg.output.format)}};
    return j.dump();
}

namespace {

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

using Row = std::vector<Cell>;

Cell opt_cell(const std::optional<double>& v) {
    if (!v) return std::monostate{};
    return *v;
}

// Forward leg of the round trip: the basis state whose diagonal entry
// carries the loss evolves to the amplified one along the short arc
// pi - 2|alpha|. With sin(alpha) = (r/s) sin(theta) and alpha >= 0 that
// is (0,1) -> (1,0).
std::pair<StateVector, StateVector> pt_forward_pair(double alpha) {
    const StateVector e1{cplx(1.0), cplx(0.0)};
    const StateVector e2{cplx(0.0), cplx(1.0)};
    if (alpha >= 0.0) return {e2, e1};
    return {e1, e2};
}

SweepResult make_result(const ScenarioConfig& cfg, std::vector<std::string> columns, int n_rows) {
    SweepResult res;
    res.metadata.version = kVersion;
    res.metadata.config_digest = fnv1a_hex(canonical_config_json(cfg));
    res.metadata.kind = kind_name(cfg.kind);
    res.columns = std::move(columns);
    res.rows.assign(n_rows, Row(res.columns.size(), Cell{std::monostate{}}));
    return res;
}

void run_evolve(const ScenarioConfig& cfg, SweepResult& res) {
    const HermitianHamiltonian h =
        build_optimal_hamiltonian(cfg.p_initial, cfg.p_final, cfg.delta_e, cfg.o0, cfg.theta);
    const StateVector psi0 = bloch_to_state(cfg.p_initial);
    const int n = cfg.grid;
    detail::parallel_for(n, [&](int k) {
        Row& row = res.rows[k];
        row[0] = static_cast<std::int64_t>(k);
        const double t = cfg.t_max * k / (n - 1);
        row[1] = t;
        try {
            const Vec3 exact = state_to_bloch(evolve_state(h, psi0, t));
            const int steps_k = std::max(1, static_cast<int>(std::lround(cfg.steps * t / cfg.t_max)));
            const OdeRun ode = evolve_bloch_ode_tracked(h, cfg.p_initial, t, steps_k);
            row[2] = exact.x;
            row[3] = exact.y;
            row[4] = exact.z;
            row[5] = ode.p.x;
            row[6] = ode.p.y;
            row[7] = ode.p.z;
            row[8] = (ode.p - exact).norm();
            row[9] = ode.max_norm_drift;
            row[10] = std::string();
        } catch (const std::exception& e) {
            row[10] = std::string(e.what());
        }
    });
}

void run_passage_like(const ScenarioConfig& cfg, SweepResult& res, bool round_trip) {
    const StateVector psi_i = bloch_to_state(cfg.p_initial);
    const StateVector psi_f = bloch_to_state(cfg.p_final);
    const int n = cfg.grid;
    detail::parallel_for(n, [&](int j) {
        Row& row = res.rows[j];
        const double theta_j = cfg.theta + 2.0 * kPi * j / n;
        row[0] = static_cast<std::int64_t>(j);
        row[1] = theta_j;
        try {
            const HermitianHamiltonian h =
                build_optimal_hamiltonian(cfg.p_initial, cfg.p_final, cfg.delta_e, cfg.o0, theta_j);
            const double closed = round_trip
                                      ? kPi / cfg.delta_e
                                      : angle_between(cfg.p_initial, cfg.p_final) / (2.0 * cfg.delta_e);
            const std::optional<double> t =
                round_trip ? round_trip_time(h, psi_i, psi_f, cfg.t_max)
                           : passage_time(h, psi_i, psi_f, cfg.t_max);
            row[2] = opt_cell(t);
            row[3] = closed;
            if (t) {
                row[4] = *t - closed;
                row[5] = std::string();
            } else {
                row[5] = std::string("not reached");
            }
        } catch (const std::exception& e) {
            row[5] = std::string(e.what());
        }
    });
}

void run_pt_sweep(const ScenarioConfig& cfg, SweepResult& res) {
    const int n = cfg.grid;
    detail::parallel_for(n, [&](int k) {
        Row& row = res.rows[k];
        row[0] = static_cast<std::int64_t>(k);
        int c = 1;
        try {
            PTHamiltonian h;
            if (cfg.pt_raw) {
                const double theta_k =
                    cfg.pt_theta_min + (cfg.pt_theta_max - cfg.pt_theta_min) * k / (n - 1);
                row[c++] = theta_k;
                h = PTHamiltonian{cfg.pt_r, cfg.pt_s, theta_k};
            } else {
                const double alpha_k =
                    cfg.alpha_min + (cfg.alpha_max - cfg.alpha_min) * k / (n - 1);
                h = build_pt_from_alpha(alpha_k, cfg.delta_e);
            }
            const PTSpectrum sp = pt_spectrum(h);  // throws on broken phase / exceptional point
            const double delta_e = 0.5 * sp.omega;
            const auto [ds1, ds2] = nqm_distances(sp.alpha);
            const auto [start, target] = pt_forward_pair(sp.alpha);
            const double t_hi = cfg.t_max_auto ? default_t_max(sp.omega) : cfg.t_max;

            row[c++] = sp.alpha;
            row[c++] = delta_e;
            row[c++] = ds1;
            row[c++] = ds2;
            const std::optional<double> t1 = pt_passage_time(h, start, target, t_hi);
            row[c++] = opt_cell(t1);
            row[c++] = t1 ? Cell{*t1 - ds1 / (2.0 * delta_e)} : Cell{std::monostate{}};
            const std::optional<double> rt = pt_round_trip_time(h, start, target, t_hi);
            row[c++] = opt_cell(rt);
            row[c++] = rt ? Cell{*rt - kPi / delta_e} : Cell{std::monostate{}};
            row.back() = (t1 && rt) ? Cell{std::string()} : Cell{std::string("not reached")};
        } catch (const std::exception& e) {
            if (cfg.pt_raw && c == 1) {
                row[1] = cfg.pt_theta_min + (cfg.pt_theta_max - cfg.pt_theta_min) * k / (n - 1);
            }
            row.back() = std::string(e.what());
        }
    });
}

void run_optimize(const ScenarioConfig& cfg, SweepResult& res) {
    const AxisSearchResult best =
        brute_force_min_passage(cfg.p_initial, cfg.p_final, cfg.delta_e, cfg.grid);
    const double closed = angle_between(cfg.p_initial, cfg.p_final) / (2.0 * cfg.delta_e);
    Row& row = res.rows[0];
    row[0] = static_cast<std::int64_t>(cfg.grid);
    row[1] = best.axis.x;
    row[2] = best.axis.y;
    row[3] = best.axis.z;
    row[4] = best.time;
    row[5] = closed;
    row[6] = best.time - closed;
    row[7] = best.reached ? std::string() : std::string("not reached");
}

}  // namespace

SweepResult run_scenario(const ScenarioConfig& cfg) {
    switch (cfg.kind) {
        case ScenarioKind::Evolve: {
            SweepResult res = make_result(cfg,
                                          {"index", "t", "px_exact", "py_exact", "pz_exact", "px_ode",
                                           "py_ode", "pz_ode", "ode_residual", "norm_drift", "error"},
                                          cfg.grid);
            run_evolve(cfg, res);
            return res;
        }
        case ScenarioKind::Passage:
        case ScenarioKind::RoundTrip: {
            SweepResult res = make_result(
                cfg, {"index", "theta", "time", "closed_form", "residual", "error"}, cfg.grid);
            run_passage_like(cfg, res, cfg.kind == ScenarioKind::RoundTrip);
            return res;
        }
        case ScenarioKind::PtSweep: {
            std::vector<std::string> cols{"index",       "alpha", "delta_e",    "ds1",         "ds2",
                                          "t1",          "t1_residual", "round_trip", "rt_residual", "error"};
            if (cfg.pt_raw) cols.insert(cols.begin() + 1, "theta");
            SweepResult res = make_result(cfg, std::move(cols), cfg.grid);
            run_pt_sweep(cfg, res);
            return res;
        }
        case ScenarioKind::Optimize: {
            SweepResult res = make_result(
                cfg, {"grid", "axis_x", "axis_y", "axis_z", "time", "closed_form", "margin", "error"},
                1);
            run_optimize(cfg, res);
            return res;
        }
    }
    throw std::logic_error("run_scenario: unhandled kind");
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string cell_csv(const Cell& c) {
    switch (c.index()) {
        case 0: return "";
        case 1: return fmt_double(std::get<double>(c));
        case 2: return std::to_string(std::get<std::int64_t>(c));
        default: return csv_quote(std::get<std::string>(c));
    }
}

json cell_json(const Cell& c) {
    switch (c.index()) {
        case 0: return nullptr;
        case 1: return std::get<double>(c);
        case 2: return std::get<std::int64_t>(c);
        default: return std::get<std::string>(c);
    }
}

}  // namespace

std::string emit(const SweepResult& result, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out;
        for (size_t i = 0; i < result.columns.size(); ++i) {
            if (i) out += ',';
            out += csv_quote(result.columns[i]);
        }
        out += '\n';
        for (const auto& row : result.rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += cell_csv(row[i]);
            }
            out += '\n';
        }
        return out;
    }

    json j;
    j["metadata"] = {{"version", result.metadata.version},
                     {"config_digest", result.metadata.config_digest},
                     {"kind", result.metadata.kind}};
    j["columns"] = result.columns;
    json rows = json::array();
    for (const auto& row : result.rows) {
        json obj;
        for (size_t i = 0; i < row.size(); ++i) obj[result.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_output(const SweepResult& result, const OutputSpec& spec) {
    const std::string bytes = emit(result, spec.format);
    if (spec.path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream f(spec.path, std::ios::binary);
    if (!f) throw IoError("cannot open output path '" + spec.path + "'");
    f << bytes;
    if (!f) throw IoError("failed writing output path '" + spec.path + "'");
}

std::string run_config(const std::string& config_text) {
    const ScenarioConfig cfg = load_config(config_text);
    return emit(run_scenario(cfg), cfg.output.format);
}

}  // namespace qbrach
