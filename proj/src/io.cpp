#include "awr/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace awr::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double number(const Json& j, const char* key) {
    if (!j.contains(key)) {
        throw DomainError(std::string("descriptor is missing '") + key + "'");
    }
    const Json& v = j.at(key);
    if (v.is_null()) {
        return kNaN;
    }
    if (!v.is_number()) {
        throw DomainError(std::string("descriptor field '") + key + "' is not a number");
    }
    return v.get<double>();
}

Json number_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

std::vector<std::string> path_names(const WaveSolution& solution) {
    return std::visit(
        [](const auto& p) -> std::vector<std::string> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TwoContactsPattern>) {
                return {"j1", "j2"};
            } else if constexpr (std::is_same_v<T, DeltaShockPattern>) {
                return {"delta"};
            } else {
                switch (p.kind) {
                    case TransportKind::Vacuum: return {"vacuum_left", "vacuum_right"};
                    case TransportKind::SingleContact: return {"contact"};
                    case TransportKind::TransportDelta: return {"delta"};
                }
                return {};
            }
        },
        solution.pattern);
}

std::vector<double> path_speeds(const Json& j, std::size_t expected) {
    if (!j.contains("paths") || !j.at("paths").is_array() || j.at("paths").size() != expected) {
        throw DomainError("descriptor has the wrong number of paths");
    }
    std::vector<double> out;
    for (const Json& p : j.at("paths")) {
        out.push_back(number(p, "c1"));
    }
    return out;
}

std::string join_row(const std::vector<double>& values) {
    std::string row;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            row += ',';
        }
        row += format_double(values[i]);
    }
    row += '\n';
    return row;
}

}  // namespace

std::string format_double(double value) {
    return fmt::format("{:.17g}", value);
}

Json setup_to_json(const RiemannSetup& setup) {
    const State l = frame_convert(setup.left, 0.0, setup.params, Frame::Fixed);
    const State r = frame_convert(setup.right, 0.0, setup.params, Frame::Fixed);
    Json j;
    j["rho_l"] = l.rho;
    j["u_l"] = l.vel;
    j["rho_r"] = r.rho;
    j["u_r"] = r.vel;
    j["A"] = setup.params.A;
    j["beta"] = setup.params.beta;
    return j;
}

RiemannSetup setup_from_json(const Json& j) {
    return make_setup(number(j, "rho_l"), number(j, "u_l"), number(j, "rho_r"), number(j, "u_r"),
                      number(j, "A"), number(j, "beta"));
}

Json solution_to_json(const WaveSolution& solution) {
    Json j;
    j["region"] = to_string(solution.region);
    j["pattern"] = pattern_name(solution);
    j["negative_velocity"] = solution.negative_velocity;
    j["setup"] = setup_to_json(setup_of(solution));

    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TwoContactsPattern>) {
                j["rho_star"] = p.intermediate.rho;
                j["v_star"] = p.intermediate.vel;
            } else if constexpr (std::is_same_v<T, DeltaShockPattern>) {
                j["v_delta"] = p.v_delta;
                j["w0"] = p.w0;
                j["entropy_margins"] = {{"lower", p.entropy_margins.lower},
                                        {"upper", p.entropy_margins.upper}};
            } else {
                j["sigma"] = number_or_null(p.sigma);
                j["w_slope"] = number_or_null(p.w_slope);
            }
        },
        solution.pattern);

    const WaveStructure ws = structure(solution);
    const std::vector<std::string> names = path_names(solution);
    Json paths = Json::array();
    for (std::size_t i = 0; i < ws.speeds0.size(); ++i) {
        paths.push_back({{"name", names[i]}, {"c1", ws.speeds0[i]}, {"c2", 0.5 * ws.params.beta}});
    }
    j["paths"] = paths;
    return j;
}

WaveSolution solution_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("region") || !j.contains("pattern") || !j.contains("setup")) {
        throw DomainError("descriptor needs region, pattern and setup");
    }
    const RiemannSetup setup = setup_from_json(j.at("setup"));
    const State left = frame_convert(setup.left, 0.0, setup.params, Frame::Moving);
    const State right = frame_convert(setup.right, 0.0, setup.params, Frame::Moving);
    const std::string name = j.at("pattern").get<std::string>();

    WaveSolution out{region_from_string(j.at("region").get<std::string>()), Pattern{},
                     j.value("negative_velocity", false)};
    if (name == "two_contacts") {
        const auto speeds = path_speeds(j, 2);
        out.pattern = TwoContactsPattern{
            left, right, State{number(j, "rho_star"), number(j, "v_star"), Frame::Moving},
            speeds[0], speeds[1], setup.params};
    } else if (name == "delta_shock") {
        if (!j.contains("entropy_margins")) {
            throw DomainError("descriptor is missing 'entropy_margins'");
        }
        const Json& m = j.at("entropy_margins");
        out.pattern = DeltaShockPattern{left, right, number(j, "v_delta"), number(j, "w0"),
                                        setup.params,
                                        EntropyMargins{number(m, "lower"), number(m, "upper")}};
    } else {
        TransportPattern p{};
        if (name == "vacuum") {
            p.kind = TransportKind::Vacuum;
        } else if (name == "single_contact") {
            p.kind = TransportKind::SingleContact;
        } else if (name == "transport_delta") {
            p.kind = TransportKind::TransportDelta;
        } else {
            throw DomainError("unknown pattern '" + name + "'");
        }
        p.left = left;
        p.right = right;
        p.sigma = number(j, "sigma");
        p.w_slope = number(j, "w_slope");
        p.params = setup.params;
        out.pattern = p;
    }
    return out;
}

PlotData emit_plotdata(const WaveSolution& solution, const std::vector<double>& t_list,
                       const std::vector<double>& x_grid) {
    for (double t : t_list) {
        if (!(t > 0.0)) {
            throw DomainError("plot times must be positive");
        }
    }
    PlotData out;
    out.fields_csv = "t,x,rho,u,on_delta\n";
    for (double t : t_list) {
        for (double x : x_grid) {
            const SamplePoint s = sample(solution, x, t, Frame::Fixed);
            double rho = 0.0;
            double u = kNaN;
            int on_delta = 0;
            if (const auto* smooth = std::get_if<Smooth>(&s)) {
                rho = smooth->state.rho;
                u = smooth->state.vel;
            } else if (const auto* d = std::get_if<OnDelta>(&s)) {
                rho = d->weight;
                u = d->u_delta;
                on_delta = 1;
            }
            out.fields_csv += format_double(t) + ',' + format_double(x) + ',' + format_double(rho) +
                              ',' + format_double(u) + ',' + std::to_string(on_delta) + '\n';
        }
    }

    const WaveStructure ws = structure(solution);
    out.paths_csv = "t";
    for (const std::string& name : path_names(solution)) {
        out.paths_csv += ",x_" + name;
    }
    out.paths_csv += '\n';
    const double t_max = t_list.empty() ? 0.0 : *std::max_element(t_list.begin(), t_list.end());
    constexpr int kPathPoints = 101;
    for (int k = 0; k < kPathPoints; ++k) {
        const double t = t_max * k / (kPathPoints - 1);
        std::vector<double> row{t};
        for (double s0 : ws.speeds0) {
            row.push_back(path_position(s0, ws.params.beta, t));
        }
        out.paths_csv += join_row(row);
    }
    return out;
}

std::string trajectory_csv(const GrhTrajectory& trajectory) {
    std::string out = "t,x,w,u_delta\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out += join_row(
            {trajectory.times[i], trajectory.x[i], trajectory.w[i], trajectory.u_delta[i]});
    }
    return out;
}

std::string residual_csv(const SuiteReport& suite) {
    std::string out = "psi_id,level,R1,R2,scale\n";
    for (std::size_t i = 0; i < suite.reports.size(); ++i) {
        const ResidualReport& r = suite.reports[i];
        out += std::to_string(i) + ',' + std::to_string(r.quad_level) + ',' +
               format_double(r.R1) + ',' + format_double(r.R2) + ',' + format_double(r.scale) +
               '\n';
    }
    return out;
}

std::string sweep_csv(const LimitSweepReport& report) {
    std::string out = "A,region,rho_star,sigma1_0,sigma2_0,v_delta,w0";
    const std::vector<std::pair<std::string, double>> none;
    const auto& columns = report.records.empty() ? none : report.records.front().errors;
    for (const auto& [name, value] : columns) {
        out += ",err_" + name;
    }
    out += '\n';
    for (const LimitRecord& r : report.records) {
        out += format_double(r.A) + ',' + to_string(r.region);
        for (double v : {r.rho_star, r.sigma1_0, r.sigma2_0, r.v_delta, r.w0}) {
            out += ',' + format_double(v);
        }
        for (const auto& [name, value] : r.errors) {
            out += ',' + format_double(value);
        }
        out += '\n';
    }
    return out;
}

Json sweep_to_json(const LimitSweepReport& report) {
    Json j;
    j["kind"] = report.kind;
    j["setup"] = setup_to_json(report.setup);
    j["count"] = report.records.size();
    Json targets = Json::object();
    for (const auto& [name, value] : report.targets.values) {
        targets[name] = number_or_null(value);
    }
    j["targets"] = targets;
    Json slopes = Json::object();
    for (const auto& [name, value] : report.slopes) {
        slopes[name] = number_or_null(value);
    }
    j["slopes"] = slopes;
    j["passed"] = report.passed;
    j["failures"] = report.failures;
    return j;
}

std::string field_csv(const FvField& field) {
    std::string out = "x_center,m,q,u\n";
    for (std::size_t i = 0; i < field.size(); ++i) {
        out += join_row({field.x_center(i), field.m[i], field.q[i], field.velocity(i)});
    }
    return out;
}

}  // namespace awr::io
