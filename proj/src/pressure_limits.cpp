#include "awr/pressure_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace awr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Tolerance for landing on the boundary S when solving at A = A0.
constexpr double kBoundaryRel = 1e-12;

double rel_error(double value, double target) {
    const double diff = std::abs(value - target);
    return target != 0.0 ? diff / std::abs(target) : diff;
}

RiemannSetup with_pressure(RiemannSetup setup, double A) {
    setup.params.A = A;
    return setup;
}

LimitRecord blank_record(double A, Region region) {
    return {A, region, kNaN, kNaN, kNaN, kNaN, kNaN, {}};
}

std::vector<double> column(const LimitSweepReport& report, const std::string& name) {
    std::vector<double> out;
    out.reserve(report.records.size());
    for (const auto& r : report.records) {
        out.push_back(error_of(r, name));
    }
    return out;
}

// Slope of an error column, or NaN when the column is identically zero to
// roundoff relative to `magnitude`.
double column_slope(const std::vector<double>& params, const std::vector<double>& errors,
                    double magnitude) {
    const double largest = *std::max_element(errors.begin(), errors.end());
    if (!(largest > 1e-13 * std::max(1.0, magnitude))) {
        return kNaN;
    }
    return loglog_slope(params, errors);
}

bool eventually_decreasing(const std::vector<double>& errors) {
    return errors.size() < 2 || errors.back() <= errors.front();
}

double boundary_tol(const RiemannSetup& setup) {
    return kBoundaryRel * std::max({1.0, std::abs(setup.left.vel), std::abs(setup.right.vel)});
}

}  // namespace

double error_of(const LimitRecord& record, const std::string& name) {
    for (const auto& [key, value] : record.errors) {
        if (key == name) {
            return value;
        }
    }
    throw DomainError("limit record has no error column '" + name + "'");
}

double loglog_slope(const std::vector<double>& params, const std::vector<double>& errors) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < std::min(params.size(), errors.size()); ++i) {
        if (!(errors[i] > 0.0) || !(params[i] > 0.0)) {
            continue;
        }
        const double lx = std::log(params[i]);
        const double ly = std::log(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double denom = n * sxx - sx * sx;
    if (n < 2 || denom == 0.0) {
        return kNaN;
    }
    return (n * sxy - sx * sy) / denom;
}

std::vector<double> default_a0_sequence(const RiemannSetup& setup, int count) {
    const Thresholds th = thresholds(setup);
    std::vector<double> out;
    for (int j = 1; j <= count; ++j) {
        out.push_back(th.A0 + (th.A1 - th.A0) * std::ldexp(1.0, -j));
    }
    return out;
}

std::vector<double> default_zero_sequence(const RiemannSetup& setup, int count) {
    const Thresholds th = thresholds(setup);
    std::vector<double> out;
    for (int j = 1; j <= count; ++j) {
        out.push_back(th.A0 * std::ldexp(1.0, -j));
    }
    return out;
}

LimitSweepReport sweep_to_A0(const RiemannSetup& setup, const std::vector<double>& A_values,
                             const std::vector<double>& probe_times) {
    validate(setup);
    if (!(setup.right.vel < setup.left.vel)) {
        throw DomainError("sweep_to_A0 requires u+ < u-");
    }
    const Thresholds th = thresholds(setup);
    const double rho_m = setup.left.rho;
    const double u_p = setup.right.vel;
    const double beta = setup.params.beta;

    LimitSweepReport report;
    report.kind = "a0";
    report.setup = setup;

    std::vector<double> gaps;
    for (double A : A_values) {
        if (!(A > th.A0 && A < th.A1)) {
            throw DomainError("sweep_to_A0: A must lie in (A0, A1)");
        }
        const RiemannSetup s = with_pressure(setup, A);
        const TwoContactsPattern p = solve_two_contacts(s);

        LimitRecord rec = blank_record(A, classify(s));
        rec.rho_star = p.intermediate.rho;
        rec.sigma1_0 = p.j1_speed0;
        rec.sigma2_0 = p.j2_speed0;

        double mass_err = 0.0;
        double mom_err = 0.0;
        for (double t : probe_times) {
            const double width =
                path_position(p.j2_speed0, beta, t) - path_position(p.j1_speed0, beta, t);
            const double mass = rec.rho_star * width;
            mass_err = std::max(mass_err, rel_error(mass, A * t));
            const double mom = rec.rho_star * (p.intermediate.vel + beta * t) * width;
            mom_err = std::max(mom_err, rel_error(mom, (u_p + beta * t) * A * t));
        }
        rec.errors = {
            {"sigma1_gap", std::abs(p.j1_speed0 - u_p)},
            {"mass_identity", mass_err},
            {"momentum_identity", mom_err},
            {"blowup", rel_error(rec.rho_star * (A - th.A0) / A, rho_m)},
        };
        gaps.push_back(A - th.A0);
        report.records.push_back(std::move(rec));
    }

    // Delta solution at A = A0 against the limit objects w = A0 t,
    // u_d = u+ + beta t, x = u+ t + beta t^2 / 2.
    const RiemannSetup at_A0 = with_pressure(setup, th.A0);
    const DeltaShockPattern delta = solve_delta(at_A0, boundary_tol(at_A0));
    double path_err = 0.0;
    for (double t : probe_times) {
        const DeltaPathPoint dp = delta_path(delta, t);
        path_err = std::max({path_err, rel_error(dp.x, path_position(u_p, beta, t)),
                             rel_error(dp.w, th.A0 * t), rel_error(dp.u_delta, u_p + beta * t)});
    }
    report.targets.values = {
        {"A0", th.A0},
        {"A1", th.A1},
        {"limit_sigma0", u_p},
        {"limit_w0", th.A0},
        {"delta_v_at_A0", delta.v_delta},
        {"delta_w0_at_A0", delta.w0},
        {"delta_v_error", rel_error(delta.v_delta, u_p)},
        {"delta_w0_error", rel_error(delta.w0, th.A0)},
        {"delta_path_error", path_err},
    };

    if (!report.records.empty()) {
        report.slopes.emplace_back("sigma1_gap",
                                   column_slope(gaps, column(report, "sigma1_gap"), u_p));
    }

    auto fail = [&report](std::string why) {
        report.passed = false;
        report.failures.push_back(std::move(why));
    };
    for (const auto& rec : report.records) {
        if (error_of(rec, "mass_identity") > 1e-12) {
            fail("mass identity violated at A = " + std::to_string(rec.A));
        }
        if (rec.region != Region::RegionII) {
            fail("A = " + std::to_string(rec.A) + " not in region II");
        }
    }
    if (!eventually_decreasing(column(report, "sigma1_gap"))) {
        fail("contact speeds do not approach u+");
    }
    if (rel_error(delta.v_delta, u_p) > 1e-12 || rel_error(delta.w0, th.A0) > 1e-12) {
        fail("limit objects disagree with the delta solution at A0");
    }
    return report;
}

LimitSweepReport sweep_to_zero(const RiemannSetup& setup, const std::vector<double>& A_values) {
    validate(setup);
    if (!(setup.right.vel < setup.left.vel)) {
        throw DomainError("sweep_to_zero requires u+ < u-");
    }
    const double A0 = setup.left.rho * (setup.left.vel - setup.right.vel);
    const double beta = setup.params.beta;
    const TransportPattern target = solve_transport(with_pressure(setup, 0.0));
    const double x1_target = path_position(target.sigma, beta, 1.0);

    LimitSweepReport report;
    report.kind = "zero";
    report.setup = setup;
    report.targets.values = {
        {"A0", A0},
        {"sigma", target.sigma},
        {"w_slope", target.w_slope},
        {"x_at_1", x1_target},
    };

    std::vector<double> params;
    for (double A : A_values) {
        if (!(A > 0.0 && A <= A0)) {
            throw DomainError("sweep_to_zero: A must lie in (0, A0]");
        }
        const RiemannSetup s = with_pressure(setup, A);
        const DeltaShockPattern d = solve_delta(s, boundary_tol(s));
        LimitRecord rec = blank_record(A, classify(s, boundary_tol(s)));
        rec.v_delta = d.v_delta;
        rec.w0 = d.w0;
        rec.errors = {
            {"v_delta", std::abs(d.v_delta - target.sigma)},
            {"w0", std::abs(d.w0 - target.w_slope)},
            {"x_at_1", std::abs(delta_path(d, 1.0).x - x1_target)},
        };
        params.push_back(A);
        report.records.push_back(std::move(rec));
    }

    if (!report.records.empty()) {
        report.slopes.emplace_back(
            "v_delta", column_slope(params, column(report, "v_delta"), target.sigma));
        report.slopes.emplace_back("w0",
                                   column_slope(params, column(report, "w0"), target.w_slope));
    }
    for (const char* name : {"v_delta", "w0", "x_at_1"}) {
        if (!eventually_decreasing(column(report, name))) {
            report.passed = false;
            report.failures.push_back(std::string(name) + " does not approach its transport limit");
        }
    }
    return report;
}

LimitSweepReport vacuum_limit(const RiemannSetup& setup, const std::vector<double>& A_values) {
    validate(setup);
    const double u_m = setup.left.vel;
    const double u_p = setup.right.vel;
    if (u_m > u_p) {
        throw DomainError("vacuum_limit requires u- <= u+");
    }
    const TransportPattern target = solve_transport(with_pressure(setup, 0.0));

    LimitSweepReport report;
    report.kind = "vacuum";
    report.setup = setup;
    report.targets.values = {
        {"rho_star", 0.0},
        {"sigma1_0", u_m},
        {"sigma2_0", u_p},
        {"single_contact", target.kind == TransportKind::SingleContact ? 1.0 : 0.0},
    };

    std::vector<double> params;
    for (double A : A_values) {
        if (!(A > 0.0)) {
            throw DomainError("vacuum_limit: A must be positive");
        }
        const RiemannSetup s = with_pressure(setup, A);
        const TwoContactsPattern p = solve_two_contacts(s);
        LimitRecord rec = blank_record(A, classify(s));
        rec.rho_star = p.intermediate.rho;
        rec.sigma1_0 = p.j1_speed0;
        rec.sigma2_0 = p.j2_speed0;
        if (target.kind == TransportKind::SingleContact) {
            rec.errors = {{"single_contact", std::abs(p.intermediate.rho - setup.left.rho) +
                                                 std::abs(p.intermediate.vel - u_m)}};
        } else {
            rec.errors = {
                {"rho_star", p.intermediate.rho},
                {"sigma1", std::abs(p.j1_speed0 - u_m)},
                {"sigma2", std::abs(p.j2_speed0 - u_p)},
            };
        }
        params.push_back(A);
        report.records.push_back(std::move(rec));
    }

    auto fail = [&report](std::string why) {
        report.passed = false;
        report.failures.push_back(std::move(why));
    };
    if (target.kind == TransportKind::SingleContact) {
        for (const auto& rec : report.records) {
            if (error_of(rec, "single_contact") != 0.0) {
                fail("J1 is not trivial on J2 at A = " + std::to_string(rec.A));
            }
        }
    } else if (!report.records.empty()) {
        report.slopes.emplace_back("rho_star",
                                   column_slope(params, column(report, "rho_star"), 0.0));
        report.slopes.emplace_back("sigma1", column_slope(params, column(report, "sigma1"), u_m));
        for (const char* name : {"rho_star", "sigma1"}) {
            if (!eventually_decreasing(column(report, name))) {
                fail(std::string(name) + " does not approach its vacuum limit");
            }
        }
    }
    return report;
}

}  // namespace awr
