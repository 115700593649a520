#include "awr/exact_riemann.hpp"

#include <algorithm>
#include <cmath>

namespace awr {

namespace {

// Relative density gap below which the equal-density formula is used.
constexpr double kEqualDensityRel = 1e-9;

// Roundoff allowance for the square-root argument of w0 near the boundary S.
constexpr double kSqrtArgSlack = 1e-12;

constexpr double kMarginSlack = 1e-12;

State moving(const State& s) {
    return {s.rho, s.vel, Frame::Moving};
}

}  // namespace

TwoContactsPattern solve_two_contacts(const RiemannSetup& setup) {
    validate(setup);
    const double A = setup.params.A;
    if (!(A > 0.0)) {
        throw NotApplicable("two-contact construction requires A > 0");
    }
    const double u_minus = setup.left.vel;
    const double u_plus = setup.right.vel;
    const double j1 = u_minus - A / setup.left.rho;
    if (!(u_plus > j1)) {
        throw NotApplicable("two-contact construction requires u+ > u- - A/rho-");
    }

    // A/rho* = u+ - u- + A/rho-; on J2 the intermediate state is the left state.
    const double rho_star =
        u_plus == u_minus ? setup.left.rho : A / (u_plus - u_minus + A / setup.left.rho);

    TwoContactsPattern out;
    out.left = moving(setup.left);
    out.right = moving(setup.right);
    out.intermediate = {rho_star, u_plus, Frame::Moving};
    out.j1_speed0 = j1;
    out.j2_speed0 = u_plus;
    out.params = setup.params;
    return out;
}

DeltaShockPattern solve_delta(const RiemannSetup& setup, double boundary_tol) {
    validate(setup);
    const double A = setup.params.A;
    const double rho_m = setup.left.rho;
    const double rho_p = setup.right.rho;
    const double u_m = setup.left.vel;
    const double u_p = setup.right.vel;
    if (!(A > 0.0)) {
        throw NotApplicable("delta-shock construction requires A > 0");
    }
    if (u_p > u_m - A / rho_m + boundary_tol) {
        throw NotApplicable("delta-shock construction requires u+ <= u- - A/rho-");
    }

    const double du = u_p - u_m;
    const double dpress = A / rho_p - A / rho_m;
    const double arg = rho_p * rho_m * du * (du - dpress);
    const double arg_scale = rho_p * rho_m * (du * du + std::abs(du * dpress));
    double w0_sq = arg;
    if (arg < 0.0) {
        if (arg < -kSqrtArgSlack * arg_scale) {
            throw InternalInconsistency("negative weight discriminant for delta-shock data");
        }
        w0_sq = 0.0;
    }
    const double w0 = std::sqrt(w0_sq);

    double v_delta;
    const double drho = rho_p - rho_m;
    if (std::abs(drho) > kEqualDensityRel * std::max(rho_p, rho_m)) {
        // Entropy root (b + w0) / a of a v^2 - 2 b v + c = 0. When b + w0
        // cancels, the same root is evaluated as c / (b - w0).
        const double b = rho_p * u_p - rho_m * u_m;
        const double c = rho_p * u_p * u_p - rho_m * u_m * u_m - A * du;
        if (std::abs(b + w0) >= std::abs(b - w0)) {
            v_delta = (b + w0) / drho;
        } else {
            v_delta = c / (b - w0);
        }
    } else {
        // Equal-density value, then one Newton step on the quadratic so the
        // O(drho) gap inside the band does not leak into its residual.
        v_delta = 0.5 * (u_p + u_m - A / rho_m);
        const double b = rho_p * u_p - rho_m * u_m;
        const double c = rho_p * u_p * u_p - rho_m * u_m * u_m - A * du;
        const double f = (drho * v_delta - 2.0 * b) * v_delta + c;
        const double df = 2.0 * (drho * v_delta - b);
        if (df != 0.0) {
            v_delta -= f / df;
        }
    }

    DeltaShockPattern out;
    out.left = moving(setup.left);
    out.right = moving(setup.right);
    out.v_delta = v_delta;
    out.w0 = w0;
    out.params = setup.params;
    out.entropy_margins = {v_delta - u_p, (u_m - A / rho_m) - v_delta};
    return out;
}

TransportPattern solve_transport(const RiemannSetup& setup) {
    validate(setup);
    if (setup.params.A != 0.0) {
        throw NotApplicable("transport solution requires A = 0");
    }
    const double rho_m = setup.left.rho;
    const double rho_p = setup.right.rho;
    const double u_m = setup.left.vel;
    const double u_p = setup.right.vel;

    TransportPattern out{};
    out.left = moving(setup.left);
    out.right = moving(setup.right);
    out.params = setup.params;
    if (u_m < u_p) {
        out.kind = TransportKind::Vacuum;
    } else if (u_m == u_p) {
        out.kind = TransportKind::SingleContact;
        out.sigma = u_m;
    } else {
        out.kind = TransportKind::TransportDelta;
        if (rho_p != rho_m) {
            const double sm = std::sqrt(rho_m);
            const double sp = std::sqrt(rho_p);
            out.sigma = (sm * u_m + sp * u_p) / (sm + sp);
            out.w_slope = std::sqrt(rho_p * rho_m) * (u_m - u_p);
        } else {
            out.sigma = 0.5 * (u_p + u_m);
            out.w_slope = rho_p * (u_m - u_p);
        }
    }
    return out;
}

WaveSolution solve(const RiemannSetup& setup, const SolveOptions& options) {
    validate(setup);
    WaveSolution out{classify(setup, options.boundary_tol), TwoContactsPattern{},
                     has_negative_velocity(setup)};
    if (setup.params.A == 0.0) {
        out.pattern = solve_transport(setup);
    } else if (is_delta_region(out.region)) {
        out.pattern = solve_delta(setup, options.boundary_tol);
    } else {
        out.pattern = solve_two_contacts(setup);
    }
    return out;
}

WaveStructure structure(const WaveSolution& solution) {
    WaveStructure ws;
    std::visit(
        [&ws](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            ws.params = p.params;
            if constexpr (std::is_same_v<T, TwoContactsPattern>) {
                ws.speeds0 = {p.j1_speed0, p.j2_speed0};
                ws.segments = {p.left, p.intermediate, p.right};
            } else if constexpr (std::is_same_v<T, DeltaShockPattern>) {
                ws.speeds0 = {p.v_delta};
                ws.segments = {p.left, p.right};
                ws.delta = WaveStructure::DeltaLine{0, p.w0};
            } else {
                switch (p.kind) {
                    case TransportKind::Vacuum:
                        ws.speeds0 = {p.left.vel, p.right.vel};
                        ws.segments = {p.left, State{0.0, 0.0, Frame::Moving}, p.right};
                        break;
                    case TransportKind::SingleContact:
                        ws.speeds0 = {p.sigma};
                        ws.segments = {p.left, p.right};
                        break;
                    case TransportKind::TransportDelta:
                        ws.speeds0 = {p.sigma};
                        ws.segments = {p.left, p.right};
                        ws.delta = WaveStructure::DeltaLine{0, p.w_slope};
                        break;
                }
            }
        },
        solution.pattern);
    return ws;
}

SamplePoint sample(const WaveSolution& solution, double x, double t, Frame frame) {
    if (!(t > 0.0)) {
        throw DomainError("sample requires t > 0");
    }
    const WaveStructure ws = structure(solution);
    const double beta = ws.params.beta;

    std::size_t segment = 0;
    for (std::size_t i = 0; i < ws.speeds0.size(); ++i) {
        const double xi = path_position(ws.speeds0[i], beta, t);
        if (ws.delta && ws.delta->path == i && x == xi) {
            const double shift = frame == Frame::Fixed ? beta * t : 0.0;
            return OnDelta{ws.delta->w0 * t, ws.speeds0[i] + shift};
        }
        if (x >= xi) {
            segment = i + 1;
        }
    }
    const State& s = ws.segments[segment];
    if (s.rho == 0.0) {
        return InVacuum{};
    }
    return Smooth{frame_convert(s, t, ws.params, frame)};
}

DeltaPathPoint delta_path(const DeltaShockPattern& delta, double t) {
    const double beta = delta.params.beta;
    const double speed = delta.v_delta + beta * t;
    return {path_position(delta.v_delta, beta, t), speed, delta.w0 * t, speed};
}

std::optional<std::pair<double, double>> turning_point(const DeltaShockPattern& delta) {
    const double beta = delta.params.beta;
    if (beta == 0.0) {
        return std::nullopt;
    }
    const double t_turn = -delta.v_delta / beta;
    if (!(t_turn > 0.0)) {
        return std::nullopt;
    }
    return std::make_pair(t_turn, -delta.v_delta * delta.v_delta / (2.0 * beta));
}

EntropyReport entropy_check(const DeltaShockPattern& delta, const RiemannSetup& setup) {
    const auto right = eigenvalues(setup.right, 0.0, setup.params);
    const auto left = eigenvalues(setup.left, 0.0, setup.params);
    const double sigma = delta.v_delta;

    EntropyReport report{};
    report.margins = {sigma - setup.right.vel,
                      (setup.left.vel - setup.params.A / setup.left.rho) - sigma};
    report.ordered = right.lambda1 <= right.lambda2 && right.lambda2 <= sigma &&
                     sigma <= left.lambda1 && left.lambda1 <= left.lambda2;
    report.strict = right.lambda1 < right.lambda2 && right.lambda2 < sigma &&
                    sigma < left.lambda1 && left.lambda1 < left.lambda2;
    const double scale =
        std::max({1.0, std::abs(setup.right.vel), std::abs(left.lambda1), std::abs(sigma)});
    report.consistent = report.margins.lower >= -kMarginSlack * scale &&
                        report.margins.upper >= -kMarginSlack * scale;
    return report;
}

QuadraticResidual delta_quadratic_residual(const RiemannSetup& setup, double v) {
    const double rho_m = setup.left.rho;
    const double rho_p = setup.right.rho;
    const double u_m = setup.left.vel;
    const double u_p = setup.right.vel;
    const double A = setup.params.A;

    const double t1 = (rho_p - rho_m) * v * v;
    const double t2 = -2.0 * (rho_p * u_p - rho_m * u_m) * v;
    const double t3 = rho_p * u_p * u_p;
    const double t4 = -rho_m * u_m * u_m;
    const double t5 = -A * (u_p - u_m);
    return {t1 + t2 + t3 + t4 + t5,
            std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5)};
}

RiemannSetup setup_of(const WaveSolution& solution) {
    return std::visit(
        [](const auto& p) { return RiemannSetup{p.left, p.right, p.params}; },
        solution.pattern);
}

std::string to_string(TransportKind kind) {
    switch (kind) {
        case TransportKind::Vacuum: return "vacuum";
        case TransportKind::SingleContact: return "single_contact";
        case TransportKind::TransportDelta: return "transport_delta";
    }
    return "?";
}

std::string pattern_name(const WaveSolution& solution) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TwoContactsPattern>) {
                return "two_contacts";
            } else if constexpr (std::is_same_v<T, DeltaShockPattern>) {
                return "delta_shock";
            } else {
                return to_string(p.kind);
            }
        },
        solution.pattern);
}

}  // namespace awr
