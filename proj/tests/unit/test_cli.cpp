#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "awr/cli.hpp"
#include "awr/io.hpp"

using namespace awr;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "awr");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code =
        cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("awr_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::Json summary(const fs::path& dir) {
    return io::Json::parse(slurp(dir / "summary.json"));
}

const std::vector<std::string> kDelta = {"--rho-l", "2", "--u-l", "4", "--rho-r",
                                         "1",       "--u-r", "0", "--A",    "1"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

}  // namespace

TEST_CASE("solve writes the solution descriptor") {
    const auto dir = scratch("solve");
    const auto r = run_cli(with({"solve"}, with(kDelta, {"--beta", "2", "--out-dir", dir.string()})));
    REQUIRE(r.code == 0);
    const auto j = summary(dir);
    CHECK(j["region"] == "III");
    CHECK(j["pattern"] == "delta_shock");
    CHECK(j["v_delta"].get<double>() == 2.0);
    CHECK(j["w0"].get<double>() == 6.0);
    CHECK(j["entropy_margins"]["lower"].get<double>() == 2.0);
    CHECK(j["entropy_margins"]["upper"].get<double>() == 1.5);
    CHECK(j["paths"][0]["c1"].get<double>() == 2.0);
    CHECK(j["paths"][0]["c2"].get<double>() == 1.0);
}

TEST_CASE("verify passes on the delta data and writes the residual table") {
    const auto dir = scratch("verify");
    const auto r = run_cli(with({"verify"}, with(kDelta, {"--beta", "2", "--quad-level", "24",
                                                          "--out-dir", dir.string()})));
    CHECK(r.code == 0);
    const auto lines = split_lines(slurp(dir / "residuals.csv"));
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "psi_id,level,R1,R2,scale");
    CHECK(summary(dir)["verification"]["passed"] == true);
}

TEST_CASE("verify reports a tolerance breach with exit 2") {
    const auto dir = scratch("verify_fail");
    const auto r = run_cli(with({"verify"}, with(kDelta, {"--quad-level", "2", "--tol", "1e-15",
                                                          "--out-dir", dir.string()})));
    CHECK(r.code == 2);
}

TEST_CASE("input errors exit 1 and name the field") {
    const auto dir = scratch("bad");
    auto r = run_cli({"solve", "--rho-l", "0", "--u-l", "4", "--rho-r", "1", "--u-r", "0", "--A",
                      "1", "--out-dir", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("rho_l") != std::string::npos);

    r = run_cli({"solve", "--rho-l", "1", "--u-l", "4", "--rho-r", "1", "--u-r", "0",
                 "--out-dir", dir.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("A") != std::string::npos);

    r = run_cli(with({"solve"}, with(kDelta, {"--beta", "nan", "--out-dir", dir.string()})));
    CHECK(r.code == 1);
    CHECK(r.err.find("beta") != std::string::npos);

    r = run_cli(with({"explode"}, kDelta));
    CHECK(r.code == 1);
    r = run_cli(with({"solve"}, with(kDelta, {"--bogus", "1"})));
    CHECK(r.code == 1);
    // Not a delta shock.
    r = run_cli({"grh", "--rho-l", "1", "--u-l", "2", "--rho-r", "1", "--u-r", "3", "--A", "1",
                 "--out-dir", dir.string()});
    CHECK(r.code == 1);
}

TEST_CASE("config file with flag override") {
    const auto dir = scratch("config");
    const auto cfg = dir / "run.toml";
    std::ofstream(cfg) << "# delta data\n[setup]\nrho_l = 2\nu_l = 4\nrho_r = 1\nu_r = 0\n"
                          "A = 1\nbeta = 0\n";
    const auto out = dir / "out";
    auto r = run_cli({"solve", "--config", cfg.string(), "--beta", "2", "--out-dir", out.string()});
    REQUIRE(r.code == 0);
    CHECK(summary(out)["setup"]["beta"].get<double>() == 2.0);

    const auto json_cfg = dir / "run.json";
    std::ofstream(json_cfg) << R"({"rho_l": 1, "u_l": 2, "rho_r": 1, "u_r": 3, "A": 1})";
    r = run_cli({"solve", "--config", json_cfg.string(), "--out-dir", out.string()});
    REQUIRE(r.code == 0);
    CHECK(summary(out)["pattern"] == "two_contacts");
    CHECK(summary(out)["rho_star"].get<double>() == 0.5);

    std::ofstream(dir / "broken.toml") << "rho_l = 2\nwhat = 3\n";
    r = run_cli({"solve", "--config", (dir / "broken.toml").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("what") != std::string::npos);

    r = run_cli({"solve", "--config", (dir / "missing.toml").string()});
    CHECK(r.code == 1);
}

TEST_CASE("default output root from the environment") {
    const auto dir = scratch("env");
    ::setenv("RIEMANN_AWR_OUT_DIR", dir.string().c_str(), 1);
    const auto r = run_cli(with({"solve"}, kDelta));
    ::unsetenv("RIEMANN_AWR_OUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("identical configs give byte-identical outputs") {
    const std::vector<std::vector<std::string>> runs = {
        with({"sample"}, with(kDelta, {"--beta", "-2", "--times", "0.5,1,2"})),
        with({"verify"}, with(kDelta, {"--beta", "2", "--seed", "9"})),
        with({"grh"}, with(kDelta, {"--beta", "2"})),
        {"sweep-a0", "--rho-l", "2", "--u-l", "4", "--rho-r", "1", "--u-r", "1", "--A", "7"},
        {"sweep-zero", "--rho-l", "4", "--u-l", "3", "--rho-r", "1", "--u-r", "1", "--A", "1"},
        with({"fv"}, with(kDelta, {"--cells", "400", "--times", "0.25"})),
    };
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto a = scratch("repeat_a" + std::to_string(k));
        const auto b = scratch("repeat_b" + std::to_string(k));
        REQUIRE(run_cli(with(runs[k], {"--out-dir", a.string()})).code == 0);
        REQUIRE(run_cli(with(runs[k], {"--out-dir", b.string()})).code == 0);
        std::size_t files = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            const auto name = entry.path().filename();
            CHECK(slurp(entry.path()) == slurp(b / name));
            ++files;
        }
        CHECK(files >= 2);
    }
}

TEST_CASE("solution descriptors round-trip") {
    const RiemannSetup cases[] = {
        make_setup(1, 2, 1, 3, 1, 0.7),     make_setup(2, 4, 1, 4, 7, -1),
        make_setup(2, 4, 1, 1, 1, 2),       make_setup(2, 4, 1, 0, 1, -2),
        make_setup(2, 4, 1, 3.5, 1, 0),     make_setup(1, 3, 1, 0, 1, 1),
        make_setup(1, 1, 2, 3, 0, -0.5),    make_setup(4, 3, 1, 1, 0, 0.5),
        make_setup(1, 2, 3, 2, 0, 0),       make_setup(0.3, -1.7, 2.9, 1.1e-3, 0.123, 1.9),
    };
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xs(-4.0, 6.0), ts(0.01, 3.0);
    for (const auto& s : cases) {
        const WaveSolution original = solve(s);
        const io::Json j = io::Json::parse(io::solution_to_json(original).dump());
        const WaveSolution copy = io::solution_from_json(j);
        CHECK(copy.region == original.region);
        CHECK(pattern_name(copy) == pattern_name(original));
        CHECK(copy.negative_velocity == original.negative_velocity);
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            const double t = ts(rng);
            CHECK(sample(copy, x, t) == sample(original, x, t));
        }
        // Points exactly on the paths too.
        const auto ws = structure(original);
        for (double speed : ws.speeds0) {
            const double x = path_position(speed, ws.params.beta, 1.0);
            CHECK(sample(copy, x, 1.0) == sample(original, x, 1.0));
        }
    }
    CHECK_THROWS_AS(io::solution_from_json(io::Json::object()), DomainError);
}

TEST_CASE("plot data: two contacts with friction") {
    const auto pd = io::emit_plotdata(solve(make_setup(1, 2, 1, 3, 1, 2)), {0.5, 1.0},
                                      {-1.0, 0.0, 1.0, 2.0});
    const auto fields = split_lines(pd.fields_csv);
    REQUIRE(fields.size() == 9);
    CHECK(fields[0] == "t,x,rho,u,on_delta");
    CHECK(pd.fields_csv.find('\r') == std::string::npos);
    CHECK(pd.fields_csv.back() == '\n');

    const auto paths = split_lines(pd.paths_csv);
    REQUIRE(paths.size() == 102);
    CHECK(paths[0] == "t,x_j1,x_j2");
    // x1 = t + t^2, x2 = 3 t + t^2.
    for (std::size_t i = 1; i < paths.size(); ++i) {
        double t, x1, x2;
        char c;
        std::istringstream row(paths[i]);
        row >> t >> c >> x1 >> c >> x2;
        CHECK(x1 == doctest::Approx(t + t * t).epsilon(1e-15));
        CHECK(x2 == doctest::Approx(3 * t + t * t).epsilon(1e-15));
    }
    CHECK(paths.back().rfind("1,", 0) == 0);
}

TEST_CASE("plot data: delta with a turning point") {
    // v_delta = 2, beta = -2: the path turns at t = 1, x = 1.
    const auto sol = solve(make_setup(2, 4, 1, 0, 1, -2));
    const auto pd = io::emit_plotdata(sol, {2.0}, {0.0, 1.0});
    const auto paths = split_lines(pd.paths_csv);
    REQUIRE(paths.size() == 102);
    CHECK(paths[0] == "t,x_delta");
    double x_max = -1.0, t_at_max = -1.0;
    for (std::size_t i = 1; i < paths.size(); ++i) {
        double t, x;
        char c;
        std::istringstream row(paths[i]);
        row >> t >> c >> x;
        if (x > x_max) {
            x_max = x;
            t_at_max = t;
        }
    }
    CHECK(t_at_max == doctest::Approx(1.0));
    CHECK(x_max == doctest::Approx(1.0));
    const auto tp = turning_point(std::get<DeltaShockPattern>(sol.pattern));
    REQUIRE(tp.has_value());
    CHECK(tp->first == 1.0);

    // x(2) = 0: the sample at (2, 0) is on the delta with weight 12 and u_delta = -2.
    const auto fields = split_lines(pd.fields_csv);
    REQUIRE(fields.size() == 3);
    CHECK(fields[1] == "2,0,12,-2,1");
}

TEST_CASE("plot data without friction has straight paths") {
    const auto pd = io::emit_plotdata(solve(make_setup(1, 2, 1, 3, 1, 0)), {1.0}, {0.0});
    const auto paths = split_lines(pd.paths_csv);
    for (std::size_t i = 1; i < paths.size(); ++i) {
        double t, x1, x2;
        char c;
        std::istringstream row(paths[i]);
        row >> t >> c >> x1 >> c >> x2;
        CHECK(x1 == doctest::Approx(t).epsilon(1e-15));
        CHECK(x2 == doctest::Approx(3 * t).epsilon(1e-15));
    }
    CHECK_THROWS_AS(io::emit_plotdata(solve(make_setup(1, 2, 1, 3, 1, 0)), {0.0}, {0.0}),
                    DomainError);
}

TEST_CASE("vacuum samples") {
    const auto pd = io::emit_plotdata(solve(make_setup(1, 1, 2, 3, 0, 0)), {1.0}, {2.0});
    CHECK(split_lines(pd.fields_csv)[1] == "1,2,0,nan,0");
}

TEST_CASE("command names") {
    for (const char* name : {"solve", "sample", "verify", "grh", "sweep-a0", "sweep-zero", "fv"}) {
        CHECK(cli::to_string(cli::command_from_string(name)) == name);
    }
    CHECK_THROWS_AS(cli::command_from_string("plot"), cli::ConfigError);
}

TEST_CASE("help exits 0") {
    CHECK(run_cli({"--help"}).code == 0);
}
