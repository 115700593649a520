#include "awr/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "awr/exact_riemann.hpp"
#include "awr/fv_reference.hpp"
#include "awr/grh_ode.hpp"
#include "awr/io.hpp"
#include "awr/pressure_limits.hpp"
#include "awr/weak_residual.hpp"

namespace awr::cli {

namespace {

using io::Json;

struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--rho-l", "rho_l", "left density"},
    {"--u-l", "u_l", "left velocity"},
    {"--rho-r", "rho_r", "right density"},
    {"--u-r", "u_r", "right velocity"},
    {"--A", "A", "pressure constant A >= 0"},
    {"--beta", "beta", "friction coefficient (default 0)"},
    {"--t-end", "t_end", "final time (grh: 1, fv: 0.5)"},
    {"--dt", "dt", "grh step (default 1e-3)"},
    {"--cells", "cells", "fv cells (default 2000)"},
    {"--cfl", "cfl", "fv CFL number (default 0.45)"},
    {"--x-min", "x_min", "left end of the fv domain and sample grid (default -2)"},
    {"--x-max", "x_max", "right end (default 4)"},
    {"--nx", "nx", "sample grid points (default 201)"},
    {"--times", "times", "comma separated sample or snapshot times"},
    {"--quad-level", "quad_level", "Gauss-Legendre points per panel (default 24)"},
    {"--seed", "seed", "test-function seed (default 42)"},
    {"--n-test", "n_test", "number of test functions (default 10)"},
    {"--tol", "tol", "verification tolerance (verify: 1e-7, grh: 1e-8)"},
    {"--a-values", "a_values", "comma separated pressure sequence for sweeps"},
    {"--out-dir", "out_dir", "output directory"},
};

const char* const kRequired[] = {"rho_l", "u_l", "rho_r", "u_r", "A"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::string json_scalar(const Json& v, const std::string& key) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return v.dump();
    }
    if (v.is_number()) {
        return io::format_double(v.get<double>());
    }
    throw ConfigError(key, "config field " + key + " must be a number or a string");
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ConfigError(key, key + " is not a number: '" + text + "'");
    }
    if (!std::isfinite(v) || errno == ERANGE) {
        throw ConfigError(key, key + " must be finite (got " + t + ")");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& text, int min_value) {
    const double v = parse_number(key, text);
    if (v != std::floor(v) || v < min_value || v > 1e9) {
        throw ConfigError(key, key + " must be an integer >= " + std::to_string(min_value) +
                                   " (got " + trim(text) + ")");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_number(key, item));
    }
    if (out.empty()) {
        throw ConfigError(key, key + " is an empty list");
    }
    return out;
}

double positive(const std::string& key, double v) {
    if (!(v > 0.0)) {
        throw ConfigError(key, key + " must be positive (got " + io::format_double(v) + ")");
    }
    return v;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw ConfigError("out_dir", "cannot write " + path.string());
    }
    f << content;
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

Json summary_head(const RunConfig& config, const WaveSolution* solution) {
    Json j;
    j["command"] = to_string(config.command);
    if (solution != nullptr) {
        const Json descriptor = io::solution_to_json(*solution);
        for (const auto& [k, v] : descriptor.items()) {
            j[k] = v;
        }
    } else {
        j["setup"] = io::setup_to_json(config.setup);
    }
    return j;
}

int run_solve(const RunConfig& config, const std::filesystem::path& dir) {
    const WaveSolution s = solve(config.setup);
    write_file(dir / "summary.json", dump(summary_head(config, &s)));
    return 0;
}

int run_sample(const RunConfig& config, const std::filesystem::path& dir) {
    const WaveSolution s = solve(config.setup);
    const std::vector<double> times =
        config.times.empty() ? std::vector<double>{0.5, 1.0, 1.5, 2.0} : config.times;
    std::vector<double> xs;
    for (int i = 0; i < config.nx; ++i) {
        xs.push_back(config.x_min + (config.x_max - config.x_min) * i / (config.nx - 1));
    }
    const io::PlotData plot = io::emit_plotdata(s, times, xs);
    write_file(dir / "fields.csv", plot.fields_csv);
    write_file(dir / "paths.csv", plot.paths_csv);

    Json j = summary_head(config, &s);
    if (const auto* d = std::get_if<DeltaShockPattern>(&s.pattern)) {
        if (const auto tp = turning_point(*d)) {
            j["turning_point"] = {{"t", tp->first}, {"x", tp->second}};
        }
    }
    j["files"] = {"fields.csv", "paths.csv"};
    write_file(dir / "summary.json", dump(j));
    return 0;
}

int run_verify(const RunConfig& config, const std::filesystem::path& dir) {
    const WaveSolution s = solve(config.setup);
    const double tol = config.tol.value_or(1e-7);
    const SuiteReport suite = residual_suite(s, config.n_test, config.seed, config.quad_level);
    write_file(dir / "residuals.csv", io::residual_csv(suite));

    const bool ok = suite.worst <= tol;
    Json j = summary_head(config, &s);
    j["verification"] = {{"quad_level", config.quad_level},
                         {"n_test", config.n_test},
                         {"seed", config.seed},
                         {"worst_normalized_residual", suite.worst},
                         {"tolerance", tol},
                         {"passed", ok}};
    j["files"] = {"residuals.csv"};
    write_file(dir / "summary.json", dump(j));
    return ok ? 0 : 2;
}

int run_grh(const RunConfig& config, const std::filesystem::path& dir) {
    const WaveSolution s = solve(config.setup);
    const double t_end = config.t_end.value_or(1.0);
    const double tol = config.tol.value_or(1e-8);
    const GrhTrajectory traj = integrate_grh(config.setup, t_end, config.dt);
    write_file(dir / "trajectory.csv", io::trajectory_csv(traj));

    Json j = summary_head(config, &s);
    Json v = {{"t_end", t_end}, {"dt", config.dt}};
    bool ok = !traj.failure.has_value();
    if (traj.failure) {
        v["failure"] = *traj.failure;
    }
    if (const auto* d = std::get_if<DeltaShockPattern>(&s.pattern); d != nullptr && ok) {
        const GrhComparison c = compare_to_closed_form(traj, *d);
        v["x_error"] = c.x_error;
        v["w_error"] = c.w_error;
        v["u_delta_error"] = c.u_delta_error;
        v["max_error"] = c.max_error;
        v["tolerance"] = tol;
        ok = c.max_error <= tol;
    }
    v["passed"] = ok;
    j["verification"] = v;
    j["files"] = {"trajectory.csv"};
    write_file(dir / "summary.json", dump(j));
    return ok ? 0 : 2;
}

int run_sweep(const RunConfig& config, const std::filesystem::path& dir) {
    const RiemannSetup& setup = config.setup;
    LimitSweepReport report;
    if (config.command == Command::SweepA0) {
        if (!(setup.right.vel < setup.left.vel && setup.left.vel > 0.0)) {
            throw ConfigError("u_r", "sweep-a0 needs u_r < u_l and u_l > 0");
        }
        if (thresholds(setup).degenerate) {
            throw ConfigError("u_r", "sweep-a0 needs u_r > 0 so that A0 < A1");
        }
        report = sweep_to_A0(setup, config.a_values.empty() ? default_a0_sequence(setup)
                                                            : config.a_values);
    } else if (setup.right.vel < setup.left.vel) {
        if (!(setup.left.vel > 0.0)) {
            throw ConfigError("u_l", "sweep-zero with u_r < u_l needs u_l > 0");
        }
        report = sweep_to_zero(setup, config.a_values.empty() ? default_zero_sequence(setup)
                                                              : config.a_values);
    } else {
        std::vector<double> as = config.a_values;
        if (as.empty()) {
            for (int j = 1; j <= 20; ++j) {
                as.push_back(std::ldexp(1.0, -j));
            }
        }
        report = vacuum_limit(setup, as);
    }
    write_file(dir / "sweep.csv", io::sweep_csv(report));
    Json j = summary_head(config, nullptr);
    j["sweep"] = io::sweep_to_json(report);
    j["files"] = {"sweep.csv"};
    write_file(dir / "summary.json", dump(j));
    return report.passed ? 0 : 2;
}

int run_fv_command(const RunConfig& config, const std::filesystem::path& dir) {
    const WaveSolution s = solve(config.setup);
    FvGrid grid;
    grid.x_min = config.x_min;
    grid.x_max = config.x_max;
    grid.n_cells = config.cells;
    grid.cfl = config.cfl;
    grid.t_end = config.t_end.value_or(0.5);

    FvOptions options;
    options.snapshot_times = config.times.empty() ? std::vector<double>{grid.t_end} : config.times;
    for (double t : options.snapshot_times) {
        if (t < 0.0 || t > grid.t_end) {
            throw ConfigError("times", "snapshot times must lie in [0, t_end]");
        }
    }
    std::sort(options.snapshot_times.begin(), options.snapshot_times.end());
    options.snapshot_times.insert(options.snapshot_times.begin(), 0.0);
    const FvResult result = run_fv(config.setup, grid, options);

    Json snaps = Json::array();
    for (std::size_t k = 1; k < result.snapshots.size(); ++k) {
        const FvField& f = result.snapshots[k];
        const std::string name = fmt::format("snapshot_{:03d}.csv", k - 1);
        write_file(dir / name, io::field_csv(f));
        Json entry = {{"file", name}, {"time", f.time}};
        if (f.time > 0.0) {
            if (const auto* d = std::get_if<DeltaShockPattern>(&s.pattern)) {
                try {
                    const Concentration c = measure_concentration(f, *d, 20);
                    entry["excess_mass"] = c.measured;
                    entry["predicted_weight"] = c.predicted;
                } catch (const DomainError&) {
                    entry["excess_mass"] = nullptr;
                }
            }
        }
        snaps.push_back(entry);
    }
    Json waves = Json::array();
    for (const WaveLocation& loc : compare_speeds(result.snapshots, s)) {
        if (loc.time == 0.0) {
            continue;
        }
        waves.push_back({{"time", loc.time},
                         {"wave", loc.wave},
                         {"x_exact", loc.x_exact},
                         {"x_numeric", loc.x_numeric},
                         {"error_cells", loc.error_cells},
                         {"detected", loc.detected}});
    }

    const FvStats& st = result.stats;
    constexpr double kMassTol = 1e-12;
    const bool ok = st.max_mass_balance_error <= kMassTol;
    Json j = summary_head(config, &s);
    j["grid"] = {{"x_min", grid.x_min},
                 {"x_max", grid.x_max},
                 {"cells", grid.n_cells},
                 {"cfl", grid.cfl},
                 {"t_end", grid.t_end}};
    j["stats"] = {{"steps", st.steps},
                  {"rejected_steps", st.rejected_steps},
                  {"cap_events", st.cap_events},
                  {"floor_events", st.floor_events},
                  {"max_mass_balance_error", st.max_mass_balance_error},
                  {"max_q_balance_error", st.max_q_balance_error},
                  {"mass_tolerance", kMassTol},
                  {"passed", ok}};
    j["snapshots"] = snaps;
    j["waves"] = waves;
    write_file(dir / "summary.json", dump(j));
    return ok ? 0 : 2;
}

}  // namespace

std::string to_string(Command command) {
    switch (command) {
        case Command::Solve: return "solve";
        case Command::Sample: return "sample";
        case Command::Verify: return "verify";
        case Command::Grh: return "grh";
        case Command::SweepA0: return "sweep-a0";
        case Command::SweepZero: return "sweep-zero";
        case Command::Fv: return "fv";
    }
    return "?";
}

Command command_from_string(const std::string& name) {
    for (Command c : {Command::Solve, Command::Sample, Command::Verify, Command::Grh,
                      Command::SweepA0, Command::SweepZero, Command::Fv}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw ConfigError("command", "unknown command '" + name + "'");
}

Settings read_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("config", "cannot read config file " + path);
    }
    std::stringstream buffer;
    buffer << f.rdbuf();
    const std::string text = buffer.str();

    Settings out;
    const std::string head = trim(text);
    if (!head.empty() && head.front() == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ConfigError("config", std::string("invalid JSON in config: ") + e.what());
        }
        for (const auto& [key, value] : j.items()) {
            if (value.is_array()) {
                std::string joined;
                for (const Json& item : value) {
                    joined += (joined.empty() ? "" : ",") + json_scalar(item, key);
                }
                out[key] = joined;
            } else {
                out[key] = json_scalar(value, key);
            }
        }
        return out;
    }

    std::stringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        const std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty() || t.front() == '[') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config", "config line " + std::to_string(number) +
                                            " is not key = value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = unquote(trim(t.substr(eq + 1)));
        if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
            value = value.substr(1, value.size() - 2);
        }
        out[key] = value;
    }
    return out;
}

RunConfig build_config(const std::string& command, const Settings& settings,
                       const std::string& default_out_dir) {
    std::set<std::string> known;
    for (const FlagSpec& spec : kFlags) {
        known.insert(spec.key);
    }
    for (const auto& [key, value] : settings) {
        if (known.count(key) == 0) {
            throw ConfigError(key, "unknown config field " + key);
        }
    }
    for (const char* key : kRequired) {
        if (settings.count(key) == 0) {
            throw ConfigError(key, std::string("missing required field ") + key);
        }
    }
    auto num = [&settings](const char* key) { return parse_number(key, settings.at(key)); };
    auto has = [&settings](const char* key) { return settings.count(key) > 0; };

    RunConfig c;
    c.command = command_from_string(command);
    const double rho_l = num("rho_l");
    const double rho_r = num("rho_r");
    for (auto [key, rho] : {std::pair{"rho_l", rho_l}, std::pair{"rho_r", rho_r}}) {
        if (!(rho > kDensityFloor)) {
            throw ConfigError(key, std::string(key) + " must be positive (got " +
                                       io::format_double(rho) + ")");
        }
    }
    const double A = num("A");
    if (A < 0.0) {
        throw ConfigError("A", "A must be non-negative (got " + io::format_double(A) + ")");
    }
    c.setup = make_setup(rho_l, num("u_l"), rho_r, num("u_r"), A, has("beta") ? num("beta") : 0.0);
    validate(c.setup);

    if (has("t_end")) {
        c.t_end = positive("t_end", num("t_end"));
    }
    if (has("dt")) {
        c.dt = positive("dt", num("dt"));
    }
    if (has("cells")) {
        c.cells = parse_int("cells", settings.at("cells"), 100);
    }
    if (has("cfl")) {
        c.cfl = num("cfl");
        if (!(c.cfl > 0.0 && c.cfl <= 0.9)) {
            throw ConfigError("cfl", "cfl must lie in (0, 0.9]");
        }
    }
    if (has("x_min")) {
        c.x_min = num("x_min");
    }
    if (has("x_max")) {
        c.x_max = num("x_max");
    }
    if (!(c.x_max > c.x_min)) {
        throw ConfigError("x_max", "x_max must exceed x_min");
    }
    if (has("nx")) {
        c.nx = parse_int("nx", settings.at("nx"), 2);
    }
    if (has("times")) {
        c.times = parse_list("times", settings.at("times"));
        for (double t : c.times) {
            positive("times", t);
        }
    }
    if (has("quad_level")) {
        c.quad_level = parse_int("quad_level", settings.at("quad_level"), 2);
    }
    if (has("seed")) {
        const std::string s = trim(settings.at("seed"));
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (s.empty() || s.front() == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
            throw ConfigError("seed", "seed must be a non-negative integer (got " + s + ")");
        }
        c.seed = v;
    }
    if (has("n_test")) {
        c.n_test = parse_int("n_test", settings.at("n_test"), 1);
    }
    if (has("tol")) {
        c.tol = positive("tol", num("tol"));
    }
    if (has("a_values")) {
        c.a_values = parse_list("a_values", settings.at("a_values"));
    }
    c.out_dir = has("out_dir") ? settings.at("out_dir") : default_out_dir;
    if (c.out_dir.empty()) {
        c.out_dir = ".";
    }
    return c;
}

RunConfig parse_args(int argc, const char* const* argv) {
    CLI::App app{"Exact Riemann solver for the Chaplygin Aw-Rascle model with friction", "awr"};
    std::string command;
    std::string config_path;
    app.add_option("command", command,
                   "solve | sample | verify | grh | sweep-a0 | sweep-zero | fv")
        ->required();
    app.add_option("--config", config_path, "JSON or key = value file; flags override it");
    std::map<std::string, std::string> flag_values;
    std::vector<std::pair<const char*, CLI::Option*>> options;
    for (const FlagSpec& spec : kFlags) {
        options.emplace_back(spec.key, app.add_option(spec.flag, flag_values[spec.key], spec.help));
    }
    app.parse(argc, argv);

    Settings settings;
    if (!config_path.empty()) {
        settings = read_config_file(config_path);
    }
    for (const auto& [key, opt] : options) {
        if (opt->count() > 0) {
            settings[key] = flag_values[key];
        }
    }
    const char* env = std::getenv("RIEMANN_AWR_OUT_DIR");
    return build_config(command, settings, env != nullptr ? env : ".");
}

int run(const RunConfig& config, std::ostream& log) {
    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("out_dir", "cannot create " + dir.string() + ": " + ec.message());
    }
    int status = 0;
    switch (config.command) {
        case Command::Solve: status = run_solve(config, dir); break;
        case Command::Sample: status = run_sample(config, dir); break;
        case Command::Verify: status = run_verify(config, dir); break;
        case Command::Grh: status = run_grh(config, dir); break;
        case Command::SweepA0:
        case Command::SweepZero: status = run_sweep(config, dir); break;
        case Command::Fv: status = run_fv_command(config, dir); break;
    }
    log << to_string(config.command) << ": " << (status == 0 ? "ok" : "verification failed")
        << ", summary in " << (dir / "summary.json").string() << "\n";
    return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run(parse_args(argc, argv), out);
    } catch (const CLI::CallForHelp&) {
        out << "usage: awr <command> [--config FILE] [flags]\n"
               "commands: solve sample verify grh sweep-a0 sweep-zero fv\n"
               "flags:";
        for (const FlagSpec& spec : kFlags) {
            out << "\n  " << spec.flag << "  " << spec.help;
        }
        out << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        err << "error [" << e.field() << "]: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotApplicable& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalInconsistency& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace awr::cli
