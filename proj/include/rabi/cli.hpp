// cli.hpp: rabi_lab command-line front end: option/config merge, subcommands, CSV + manifest output.
//
// Exit codes: 0 success, 2 usage/config error, 3 convergence failure, 4 SUSY not detected.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rabi/analysis.hpp"
#include "rabi/grid_oracle.hpp"
#include "rabi/hamiltonians.hpp"
#include "rabi/io.hpp"
#include "rabi/spectra.hpp"
#include "rabi/sweep.hpp"

namespace rabi::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kConfigEnv = "RABI_LAB_CONFIG";

enum ExitCode : int { ok = 0, usage = 2, convergence = 3, no_susy = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KeySpec {
    std::string name;
    std::string help;
    std::optional<std::string> fallback;  // built-in default
};

// Merged settings: CLI flag > config file > built-in default.
class Settings {
public:
    Settings(std::map<std::string, std::string> values, std::set<std::string> from_cli)
        : values_(std::move(values)), from_cli_(std::move(from_cli)) {}

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    const std::string& str(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) throw UsageError("missing required option --" + key);
        return it->second;
    }

    double num(const std::string& key) const {
        try {
            return io::parse_number(str(key), key);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }

    std::optional<double> opt_num(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return num(key);
    }

    int integer(const std::string& key) const {
        const double v = num(key);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError("option --" + key + " must be an integer");
        return static_cast<int>(v);
    }

    const std::map<std::string, std::string>& all() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> from_cli_;
};

struct Command {
    std::string name;
    std::string help;
    std::vector<KeySpec> keys;
    std::function<int(const Settings&, std::ostream&, std::ostream&)> action;
};

// ------------------------------------------------------------ helpers ------

inline std::vector<KeySpec> model_keys(const char* default_model) {
    return {
        {"model", "qr | qr-ren | transformed | transformed-ren | free", default_model},
        {"omega-a", "qubit frequency (units of --omega-unit)", std::nullopt},
        {"omega-c", "boson frequency (units of --omega-unit)", std::nullopt},
        {"g", "coupling (units of --omega-unit)", std::nullopt},
        {"hbar", "reduced Planck constant", "1"},
        {"a2-coeff", "coefficient C of the hbar C g^2 (a+a^dag)^2 term", "0"},
        {"omega-unit", "reference frequency multiplying every frequency flag", "1"},
    };
}

inline std::vector<KeySpec> truncation_keys() {
    return {
        {"initial-dim", "initial boson truncation", "16"},
        {"growth", "truncation growth factor", "1.5"},
        {"max-dim", "largest boson truncation", "1024"},
        {"level-tol", "level convergence tolerance (energy)", "1e-10"},
    };
}

inline std::vector<KeySpec> output_keys() {
    return {
        {"out", "output directory", "."},
        {"run-id", "run identifier used in output file names", std::nullopt},
    };
}

inline std::vector<KeySpec> concat(std::initializer_list<std::vector<KeySpec>> parts) {
    std::vector<KeySpec> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline TruncationSpec truncation_from(const Settings& s) {
    TruncationSpec t;
    t.initial_dim = s.integer("initial-dim");
    t.growth_factor = s.num("growth");
    t.max_dim = s.integer("max-dim");
    t.level_tol = s.num("level-tol");
    try {
        t.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return t;
}

inline ModelKind model_from(const Settings& s) {
    try {
        return parse_model_kind(s.str("model"));
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

// omega_a is optional for the free boson; every other frequency is required.
inline ModelParams params_from(const Settings& s, bool need_g = true) {
    const double unit = s.num("omega-unit");
    ModelParams p;
    p.omega_c = unit * s.num("omega-c");
    const bool free = s.has("model") && model_from(s) == ModelKind::free_boson;
    p.omega_a = (free && !s.has("omega-a")) ? 0.0 : unit * s.num("omega-a");
    p.g = need_g ? unit * s.num("g") : (s.has("g") ? unit * s.num("g") : 0.0);
    p.hbar = s.num("hbar");
    p.a2_coeff = s.num("a2-coeff");
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return p;
}

inline std::string canonical_settings(const Settings& s) {
    std::string out;
    for (const auto& [k, v] : s.all()) {
        if (k == "out" || k == "jobs" || k == "run-id" || k == "config") continue;
        out += k + "=" + v + "\n";
    }
    return out;
}

inline std::string run_id_for(const std::string& command, const Settings& s) {
    if (s.has("run-id")) return s.str("run-id");
    std::ostringstream id;
    id << command << '-' << std::hex << io::fnv1a(command + "\n" + canonical_settings(s));
    return id.str();
}

// Output directory plus run-id prefixed file names.
class RunOutput {
public:
    RunOutput(std::string command, const Settings& s)
        : command_(std::move(command)), run_id_(run_id_for(command_, s)), dir_(s.str("out")),
          start_(std::chrono::steady_clock::now()) {
        std::filesystem::create_directories(dir_);
        manifest_["command"] = command_;
        manifest_["run_id"] = run_id_;
        manifest_["tool_version"] = kToolVersion;
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [k, v] : s.all()) params[k] = v;
        manifest_["parameters"] = params;
        manifest_["files"] = nlohmann::json::array();
    }

    const std::string& run_id() const { return run_id_; }
    nlohmann::json& manifest() { return manifest_; }

    std::string write(const std::string& suffix, const std::string& content) {
        const std::string name = run_id_ + "_" + suffix;
        io::write_file((std::filesystem::path(dir_) / name).string(), content);
        manifest_["files"].push_back(name);
        return name;
    }

    std::string finish(int exit_code) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        manifest_["wall_clock_seconds"] = secs;
        manifest_["exit_code"] = exit_code;
        const std::string name = run_id_ + "_manifest.json";
        io::write_file((std::filesystem::path(dir_) / name).string(), manifest_.dump(2) + "\n");
        return name;
    }

private:
    std::string command_;
    std::string run_id_;
    std::string dir_;
    std::chrono::steady_clock::time_point start_;
    nlohmann::json manifest_;
};

inline nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return io::format_number(v);
}

inline nlohmann::json truncation_json(const TruncationSpec& t) {
    return {{"initial_dim", t.initial_dim}, {"growth_factor", t.growth_factor}, {"max_dim", t.max_dim},
            {"level_tol", t.level_tol}};
}

inline nlohmann::json point_json(const SweepRecord& rec) {
    nlohmann::json j;
    j["index"] = rec.index;
    j["sweep_param"] = rec.point.param;
    j["omega_a"] = rec.point.omega_a;
    j["g"] = rec.point.g;
    j["converged"] = rec.ok;
    if (!rec.ok) {
        j["error"] = rec.error;
        return j;
    }
    j["converged_dim"] = rec.spectrum.converged_dim;
    const auto& a = rec.action;
    j["gap_zero"] = a.action_defined && a.action.infinite;
    j["action_defined"] = a.action_defined;
    j["negative_action"] = a.action_defined && a.action.negative;
    j["g_undefined"] = !a.g_defined;
    j["g_bound_violated"] = a.g_bound_violated;
    j["mean_deviation"] = json_number(a.mean_deviation);
    return j;
}

inline SweepRecord single_point(const ModelParams& p, ModelKind kind, int k, const TruncationSpec& trunc,
                                std::optional<double> c_dw) {
    SweepSchedule s;
    s.omega_c = p.omega_c;
    s.hbar = p.hbar;
    s.a2_coeff = p.a2_coeff;
    s.points.push_back({p.g, p.omega_a, p.g});
    return evaluate_point(s, 0, kind, k, trunc, {1, c_dw});
}

inline bool is_convergence_error(const SweepRecord& rec) {
    return !rec.ok && rec.error.find("converge") != std::string::npos;
}

// --------------------------------------------------------- subcommands ------

inline int cmd_spectrum(const Settings& s, std::ostream& out, std::ostream&) {
    const ModelKind kind = model_from(s);
    const ModelParams p = params_from(s);
    const TruncationSpec trunc = truncation_from(s);
    const int k = s.integer("levels");
    if (k < 1) throw UsageError("--levels must be >= 1");

    RunOutput run("spectrum", s);
    run.manifest()["truncation"] = truncation_json(trunc);
    const SweepRecord rec = single_point(p, kind, k, trunc, std::nullopt);
    run.manifest()["points"] = nlohmann::json::array({point_json(rec)});
    if (!rec.ok) {
        run.finish(is_convergence_error(rec) ? ExitCode::convergence : ExitCode::usage);
        if (!is_convergence_error(rec)) throw UsageError(rec.error);
        out << "convergence failure: " << rec.error << "\n";
        return ExitCode::convergence;
    }
    run.write("levels.csv", io::levels_csv({rec}));
    run.finish(ExitCode::ok);
    for (std::size_t i = 0; i < rec.spectrum.levels.size(); ++i) {
        out << i << ' ' << io::format_number(rec.spectrum.levels[i]) << ' ' << to_string(rec.spectrum.parity_sector[i])
            << '\n';
    }
    return ExitCode::ok;
}

inline int cmd_sweep(const Settings& s, std::ostream& out, std::ostream&) {
    const ModelKind kind = model_from(s);
    const TruncationSpec trunc = truncation_from(s);
    const int k = s.integer("levels");
    const double unit = s.num("omega-unit");
    const std::string mode = s.str("mode");
    if (s.num("a2-coeff") != 0.0 && is_transformed_frame(kind)) {
        throw UsageError("--a2-coeff is only supported for the lab-frame models qr and qr-ren");
    }

    SweepSchedule sched;
    try {
        if (mode == "lmt1") {
            sched = lmt1_schedule(unit * s.num("omega-a"), unit * s.num("omega-c"), unit * s.num("g-start"),
                                  unit * s.num("g-end"), s.integer("steps"), s.num("hbar"), s.num("a2-coeff"));
        } else if (mode == "lmt2") {
            sched.mode = SweepMode::lmt2;
            sched.omega_c = unit * s.num("omega-c");
            sched.hbar = s.num("hbar");
            sched.a2_coeff = s.num("a2-coeff");
            if (s.has("schedule")) {
                std::ifstream f(s.str("schedule"));
                if (!f) throw UsageError("cannot open schedule file '" + s.str("schedule") + "'");
                sched.points = io::read_lmt2_schedule(f);
                for (auto& pt : sched.points) {
                    pt.omega_a *= unit;
                    pt.g *= unit;
                }
            } else {
                const double wa0 = s.has("omega-a0") ? s.num("omega-a0") : s.num("omega-a");
                const double gmax = s.has("g-max") ? s.num("g-max") : 3.0 * s.num("omega-c");
                sched = lmt2_default_schedule(unit * wa0, sched.omega_c, unit * gmax, s.integer("steps"), sched.hbar,
                                              sched.a2_coeff);
            }
        } else {
            throw UsageError("--mode must be lmt1 or lmt2");
        }
        validate(sched);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }

    SweepOptions opts;
    opts.jobs = s.has("jobs") ? s.integer("jobs") : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    opts.c_dw = s.opt_num("c-dw");

    RunOutput run("sweep", s);
    run.manifest()["truncation"] = truncation_json(trunc);
    run.manifest()["mode"] = mode;
    const auto records = run_sweep(sched, kind, k, trunc, opts);
    nlohmann::json pts = nlohmann::json::array();
    int failed = 0;
    for (const auto& rec : records) {
        pts.push_back(point_json(rec));
        if (!rec.ok) ++failed;
    }
    run.manifest()["points"] = pts;
    run.manifest()["failed_points"] = failed;
    run.write("levels.csv", io::levels_csv(records));
    run.write("actions.csv", io::actions_csv(records));
    const int code = failed > 0 ? ExitCode::convergence : ExitCode::ok;
    run.finish(code);
    out << "sweep " << mode << ": " << records.size() << " points, " << failed << " failed, run " << run.run_id() << "\n";
    return code;
}

inline int cmd_action(const Settings& s, std::ostream& out, std::ostream&) {
    const ModelKind kind = model_from(s);
    const ModelParams p = params_from(s);
    const TruncationSpec trunc = truncation_from(s);
    const int k = std::max(2, s.integer("levels"));

    RunOutput run("action", s);
    run.manifest()["truncation"] = truncation_json(trunc);
    const SweepRecord rec = single_point(p, kind, k, trunc, s.opt_num("c-dw"));
    run.manifest()["points"] = nlohmann::json::array({point_json(rec)});
    if (!rec.ok) {
        run.finish(is_convergence_error(rec) ? ExitCode::convergence : ExitCode::usage);
        if (!is_convergence_error(rec)) throw UsageError(rec.error);
        return ExitCode::convergence;
    }
    run.write("levels.csv", io::levels_csv({rec}));
    run.write("actions.csv", io::actions_csv({rec}));
    run.finish(ExitCode::ok);
    const auto& a = rec.action;
    out << "gap " << io::format_number(a.gap) << " s_euc " << io::format_number(a.s_euc()) << " g_of_g "
        << (a.g_defined ? io::format_number(a.g_of_g) : std::string("undefined")) << '\n';
    return ExitCode::ok;
}

inline int cmd_resolvent(const Settings& s, std::ostream& out, std::ostream&) {
    const ModelParams p = params_from(s);
    const TruncationSpec trunc = truncation_from(s);
    const double z_re = s.num("z-real");
    const double z_im = s.has("z-imag") ? s.num("z-imag") : p.hbar * p.omega_c;
    if (z_im == 0.0) throw UsageError("--z-imag must be nonzero");

    RunOutput run("resolvent", s);
    run.manifest()["truncation"] = truncation_json(trunc);
    try {
        const auto res = resolvent_distance(p, {z_re, z_im}, trunc);
        std::string csv = "sweep_param,z_real,z_imag,distance,converged_dim\n";
        csv += io::format_number(p.g) + ',' + io::format_number(z_re) + ',' + io::format_number(z_im) + ',' +
               io::format_number(res.distance) + ',' + std::to_string(res.n_boson) + '\n';
        run.write("resolvent.csv", csv);
        run.finish(ExitCode::ok);
        out << "distance " << io::format_number(res.distance) << '\n';
        return ExitCode::ok;
    } catch (const ConvergenceFailure& e) {
        run.manifest()["error"] = e.what();
        run.finish(ExitCode::convergence);
        return ExitCode::convergence;
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

inline int cmd_susy(const Settings& s, std::ostream& out, std::ostream&) {
    const ModelKind kind = model_from(s);
    const ModelParams p = params_from(s);
    const TruncationSpec trunc = truncation_from(s);
    const int k = s.integer("levels");
    const double tol = s.num("susy-tol");

    RunOutput run("susy", s);
    run.manifest()["truncation"] = truncation_json(trunc);
    const SweepRecord rec = single_point(p, kind, k, trunc, std::nullopt);
    run.manifest()["points"] = nlohmann::json::array({point_json(rec)});
    if (!rec.ok) {
        run.finish(is_convergence_error(rec) ? ExitCode::convergence : ExitCode::usage);
        if (!is_convergence_error(rec)) throw UsageError(rec.error);
        return ExitCode::convergence;
    }
    const SusyReport rep = detect_susy(rec.spectrum, tol);
    run.write("levels.csv", io::levels_csv({rec}));
    run.write("susy.csv", "sweep_param,is_susy_n2,spacing\n" + io::format_number(p.g) + ',' +
                              (rep.is_susy_n2 ? "true" : "false") + ',' + io::format_number(rep.spacing) + '\n');
    const int code = rep.is_susy_n2 ? ExitCode::ok : ExitCode::no_susy;
    run.manifest()["is_susy_n2"] = rep.is_susy_n2;
    run.finish(code);
    out << (rep.is_susy_n2 ? "N=2 SUSY pattern detected, spacing " + io::format_number(rep.spacing)
                           : std::string("no N=2 SUSY pattern"))
        << '\n';
    return code;
}

inline int cmd_oracle_compare(const Settings& s, std::ostream& out, std::ostream&) {
    const ModelKind kind = model_from(s);
    const ModelParams p = params_from(s);
    const TruncationSpec trunc = truncation_from(s);
    const int k = s.integer("levels");
    oracle::GridSpec grid;
    grid.points = s.integer("grid-points");
    grid.half_width = s.num("half-width");
    grid.stencil_order = s.integer("stencil");
    try {
        grid.validate(p);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }

    RunOutput run("oracle-compare", s);
    run.manifest()["truncation"] = truncation_json(trunc);
    run.manifest()["grid"] = {{"half_width", grid.half_width}, {"points", grid.points}, {"stencil_order", grid.stencil_order}};
    const SweepRecord rec = single_point(p, kind, k, trunc, std::nullopt);
    run.manifest()["points"] = nlohmann::json::array({point_json(rec)});
    if (!rec.ok) {
        run.finish(is_convergence_error(rec) ? ExitCode::convergence : ExitCode::usage);
        if (!is_convergence_error(rec)) throw UsageError(rec.error);
        return ExitCode::convergence;
    }
    const SpectrumResult grid_spec = oracle::oracle_spectrum(p, grid, k);
    // Energies of the renormalized kinds carry +hbar g^2/omega_c relative to the grid operator.
    const double shift = is_renormalized(kind) ? self_energy_shift(p) : 0.0;
    std::string csv = "level_index,fock_energy,grid_energy,abs_diff,fock_sector,grid_sector\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < rec.spectrum.levels.size() && i < grid_spec.levels.size(); ++i) {
        const double grid_e = grid_spec.levels[i] + shift;
        const double diff = std::abs(rec.spectrum.levels[i] - grid_e);
        worst = std::max(worst, diff);
        csv += std::to_string(i) + ',' + io::format_number(rec.spectrum.levels[i]) + ',' + io::format_number(grid_e) +
               ',' + io::format_number(diff) + ',' + std::string(to_string(rec.spectrum.parity_sector[i])) + ',' +
               std::string(to_string(grid_spec.parity_sector[i])) + '\n';
    }
    run.write("oracle.csv", csv);
    run.manifest()["max_abs_diff"] = worst;
    run.finish(ExitCode::ok);
    out << "max |fock - grid| over " << k << " levels: " << io::format_number(worst) << '\n';
    return ExitCode::ok;
}

inline std::vector<Command> commands() {
    const std::vector<KeySpec> jobs{{"jobs", "worker threads (default: number of processors)", std::nullopt}};
    const std::vector<KeySpec> levels10{{"levels", "number of lowest levels", "10"}};
    return {
        {"spectrum", "lowest levels of one parameter point",
         concat({model_keys("qr"), truncation_keys(), output_keys(), levels10}), cmd_spectrum},
        {"sweep", "LMT1 / LMT2 sweep of levels and instanton observables",
         concat({model_keys("qr-ren"), truncation_keys(), output_keys(), levels10, jobs,
                 {{"mode", "lmt1 | lmt2", "lmt1"},
                  {"g-start", "LMT1 first coupling", "0"},
                  {"g-end", "LMT1 last coupling", "3"},
                  {"steps", "number of sweep points", "61"},
                  {"schedule", "LMT2 schedule CSV (r,omega_a,g)", std::nullopt},
                  {"omega-a0", "LMT2 default schedule: omega_a at r = 0", std::nullopt},
                  {"g-max", "LMT2 default schedule: g at r = 1 (default 3 omega_c)", std::nullopt},
                  {"c-dw", "quartic double-well coefficient for q0", std::nullopt}}}),
         cmd_sweep},
        {"action", "tunneling gap, Euclidean action, G(g), q0 at one point",
         concat({model_keys("qr"), truncation_keys(), output_keys(),
                 {{"levels", "number of lowest levels", "2"}, {"c-dw", "quartic double-well coefficient", std::nullopt}}}),
         cmd_action},
        {"resolvent", "norm distance between the resolvents of H~ren and the free boson",
         concat({model_keys("transformed-ren"), truncation_keys(), output_keys(),
                 {{"z-real", "real part of z (energy)", "0"}, {"z-imag", "imaginary part of z (default hbar omega_c)", std::nullopt}}}),
         cmd_resolvent},
        {"susy", "N=2 SUSY pattern test; exit 0 when detected, 4 otherwise",
         concat({model_keys("qr"), truncation_keys(), output_keys(), levels10,
                 {{"susy-tol", "degeneracy/spacing tolerance", "1e-8"}}}),
         cmd_susy},
        {"oracle-compare", "position-grid oracle versus Fock-space levels",
         concat({model_keys("transformed"), truncation_keys(), output_keys(),
                 {{"levels", "number of lowest levels", "4"},
                  {"grid-points", "grid points per component", "1024"},
                  {"half-width", "grid half width L", "12"},
                  {"stencil", "finite-difference order (2 or 4)", "4"}}}),
         cmd_oracle_compare},
    };
}

// Entry point shared by the executable and the tests. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rabi_lab: quantum Rabi model spectra, symmetry breaking and instanton observables"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    const auto cmds = commands();
    struct Bound {
        CLI::App* sub;
        std::map<std::string, std::string> raw;
        std::string config;
    };
    std::vector<Bound> bound(cmds.size());
    for (std::size_t c = 0; c < cmds.size(); ++c) {
        auto* sub = app.add_subcommand(cmds[c].name, cmds[c].help);
        bound[c].sub = sub;
        for (const auto& key : cmds[c].keys) {
            std::string help = key.help;
            if (key.fallback) help += " [default " + *key.fallback + "]";
            sub->add_option("--" + key.name, bound[c].raw[key.name], help);
        }
        sub->add_option("--config", bound[c].config, std::string("key=value config file (fallback: $") + kConfigEnv + ")");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage;
    }

    for (std::size_t c = 0; c < cmds.size(); ++c) {
        if (!bound[c].sub->parsed()) continue;
        const auto& cmd = cmds[c];
        try {
            std::set<std::string> known;
            for (const auto& key : cmd.keys) known.insert(key.name);

            std::map<std::string, std::string> merged;
            for (const auto& key : cmd.keys)
                if (key.fallback) merged[key.name] = *key.fallback;

            std::string config_path = bound[c].config;
            if (config_path.empty()) {
                if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
            }
            if (!config_path.empty()) {
                std::ifstream f(config_path);
                if (!f) throw UsageError("cannot open config file '" + config_path + "'");
                std::map<std::string, std::string> cfg;
                try {
                    cfg = io::read_config(f);
                } catch (const DomainError& e) {
                    throw UsageError(e.what());
                }
                for (const auto& [k, v] : cfg) {
                    if (!known.count(k)) throw UsageError("unknown config key '" + k + "' for " + cmd.name);
                    merged[k] = v;
                }
            }
            std::set<std::string> from_cli;
            for (const auto& key : cmd.keys) {
                if (bound[c].sub->get_option("--" + key.name)->count() > 0) {
                    merged[key.name] = bound[c].raw[key.name];
                    from_cli.insert(key.name);
                }
            }
            return cmd.action(Settings(std::move(merged), std::move(from_cli)), out, err);
        } catch (const UsageError& e) {
            err << cmd.name << ": " << e.what() << '\n';
            return ExitCode::usage;
        } catch (const std::filesystem::filesystem_error& e) {
            err << cmd.name << ": " << e.what() << '\n';
            return ExitCode::usage;
        }
    }
    return ExitCode::usage;
}

} // namespace rabi::cli
