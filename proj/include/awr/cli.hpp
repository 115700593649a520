#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "awr/model.hpp"

namespace awr::cli {

/// Malformed or incomplete configuration. `field` names the offending key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class Command { Solve, Sample, Verify, Grh, SweepA0, SweepZero, Fv };

std::string to_string(Command command);
Command command_from_string(const std::string& name);

struct RunConfig {
    Command command = Command::Solve;
    RiemannSetup setup;
    std::optional<double> t_end;      ///< grh defaults to 1, fv to 0.5
    double dt = 1e-3;                 ///< grh step
    int cells = 2000;                 ///< fv grid
    double cfl = 0.45;
    double x_min = -2.0;              ///< fv domain and sample grid
    double x_max = 4.0;
    int nx = 201;                     ///< sample grid points
    std::vector<double> times;        ///< sample times, fv snapshot times
    int quad_level = 24;
    std::uint64_t seed = 42;
    int n_test = 10;                  ///< verify: number of test functions
    std::optional<double> tol;        ///< verify defaults to 1e-7, grh to 1e-8
    std::vector<double> a_values;     ///< sweep sequence; empty selects the default
    std::string out_dir;
};

/// Flat key -> value settings. Keys use underscores (rho_l, t_end, ...).
using Settings = std::map<std::string, std::string>;

/// Reads a JSON object or a key = value file ('#' comments, [section]
/// headers ignored). Lists are comma separated. Throws ConfigError
/// (field "config") when the file cannot be read or parsed.
Settings read_config_file(const std::string& path);

/// Builds a RunConfig from merged settings. `default_out_dir` is used when
/// the settings carry no out_dir. Throws ConfigError naming the field for
/// missing required fields, unparseable or non-finite numbers and unknown keys.
RunConfig build_config(const std::string& command, const Settings& settings,
                       const std::string& default_out_dir);

/// Parses argv (command followed by flags), merging --config file values
/// with flags (flags win). The default output root is RIEMANN_AWR_OUT_DIR or
/// the working directory.
RunConfig parse_args(int argc, const char* const* argv);

/// Runs a command and writes its artifacts to config.out_dir. Returns 0 on
/// success and 2 on a verification failure. Input errors surface as
/// ConfigError or DomainError.
int run(const RunConfig& config, std::ostream& log);

/// Full front end: parse, run, map errors to exit codes (1 for input errors).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace awr::cli
