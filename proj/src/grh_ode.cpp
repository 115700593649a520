#include "awr/grh_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

namespace awr {

namespace {

using GrhState = std::array<double, 3>;  // x, w, w * u_delta (or w * v_delta)

struct DeltaSeed {
    double v_delta;  // moving-frame delta velocity
    double w0;
};

DeltaSeed algebraic_seed(const RiemannSetup& setup) {
    const Region region = classify(setup);
    if (setup.params.A == 0.0) {
        const TransportPattern p = solve_transport(setup);
        if (p.kind != TransportKind::TransportDelta) {
            throw NotApplicable("GRH integration requires delta-shock data");
        }
        return {p.sigma, p.w_slope};
    }
    if (!is_delta_region(region)) {
        throw NotApplicable("GRH integration requires data in region III or on S");
    }
    const DeltaShockPattern p = solve_delta(setup);
    return {p.v_delta, p.w0};
}

class GrhSystem {
public:
    GrhSystem(const RiemannSetup& setup, Frame frame, DeltaSeed seed, double w_floor)
        : setup_(setup), frame_(frame), seed_(seed), w_floor_(w_floor) {}

    /// Delta velocity in the integration frame.
    double delta_velocity(const GrhState& y, double t) const {
        if (y[1] < w_floor_) {
            return seed_.v_delta + (frame_ == Frame::Fixed ? setup_.params.beta * t : 0.0);
        }
        return y[2] / y[1];
    }

    void operator()(const GrhState& y, GrhState& dydt, double t) const {
        const double beta = setup_.params.beta;
        const double A = setup_.params.A;
        const double rho_m = setup_.left.rho;
        const double rho_p = setup_.right.rho;
        // Fixed-frame velocities on both sides.
        const double u_m = setup_.left.vel + beta * t;
        const double u_p = setup_.right.vel + beta * t;

        const double vel = delta_velocity(y, t);
        const double sigma = frame_ == Frame::Fixed ? vel : vel + beta * t;

        const double jump_rho = rho_p - rho_m;
        const double jump_flux = rho_p * u_p - rho_m * u_m;
        dydt[0] = sigma;
        dydt[1] = sigma * jump_rho - jump_flux;

        if (frame_ == Frame::Fixed) {
            // [rho (u - A/rho)] = [rho u]
            const double jump_mom_flux =
                rho_p * u_p * (u_p - A / rho_p) - rho_m * u_m * (u_m - A / rho_m);
            dydt[2] = sigma * jump_flux - jump_mom_flux + beta * y[1];
        } else {
            const double v_m = setup_.left.vel;
            const double v_p = setup_.right.vel;
            const double q_m = rho_m * (v_m - A / rho_m);
            const double q_p = rho_p * (v_p - A / rho_p);
            dydt[2] = sigma * (q_p - q_m) - (q_p * u_p - q_m * u_m);
        }
    }

private:
    RiemannSetup setup_;
    Frame frame_;
    DeltaSeed seed_;
    double w_floor_;
};

}  // namespace

GrhTrajectory integrate_grh(const RiemannSetup& setup, double t_end, double dt, Frame frame) {
    validate(setup);
    if (!(t_end > 0.0) || !(dt > 0.0) || !std::isfinite(t_end) || !std::isfinite(dt)) {
        throw DomainError("integrate_grh requires t_end > 0 and dt > 0");
    }
    const DeltaSeed seed = algebraic_seed(setup);
    const double w_floor = 1e-12 * (1.0 + seed.w0 * t_end);
    const GrhSystem system(setup, frame, seed, w_floor);
    const double beta = setup.params.beta;

    GrhTrajectory traj;
    traj.setup = setup;
    traj.frame = frame;
    traj.dt = dt;

    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    traj.times.reserve(n_steps + 1);

    auto record = [&](const GrhState& y, double t) {
        traj.times.push_back(t);
        traj.x.push_back(y[0]);
        traj.w.push_back(y[1]);
        traj.wu.push_back(y[2]);
        const double vel = system.delta_velocity(y, t);
        traj.u_delta.push_back(frame == Frame::Fixed ? vel : vel + beta * t);
    };

    boost::numeric::odeint::runge_kutta4<GrhState> stepper;
    GrhState y{0.0, 0.0, 0.0};
    double t = 0.0;
    record(y, t);
    for (std::size_t k = 1; k <= n_steps; ++k) {
        const double t_next = std::min(static_cast<double>(k) * dt, t_end);
        stepper.do_step(std::cref(system), y, t, t_next - t);
        t = t_next;
        if (!(y[1] > 0.0)) {
            traj.failure = "weight became non-positive at t = " + std::to_string(t);
            break;
        }
        record(y, t);
    }
    return traj;
}

GrhComparison compare_to_closed_form(const GrhTrajectory& traj, const DeltaShockPattern& delta) {
    const std::size_t n = traj.times.size();
    if (n == 0 || traj.x.size() != n || traj.w.size() != n || traj.u_delta.size() != n) {
        throw DomainError("trajectory grid is empty or inconsistent");
    }
    if (!(traj.setup.left == delta.left) || !(traj.setup.right == delta.right) ||
        traj.setup.params.A != delta.params.A || traj.setup.params.beta != delta.params.beta) {
        throw DomainError("trajectory and delta solution describe different data");
    }

    double x_ref = 0.0;
    double w_ref = 0.0;
    double u_ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const DeltaPathPoint p = delta_path(delta, traj.times[i]);
        x_ref = std::max(x_ref, std::abs(p.x));
        w_ref = std::max(w_ref, std::abs(p.w));
        u_ref = std::max(u_ref, std::abs(p.u_delta));
    }
    auto normalise = [](double ref) { return ref > 0.0 ? ref : 1.0; };
    x_ref = normalise(x_ref);
    w_ref = normalise(w_ref);
    u_ref = normalise(u_ref);

    GrhComparison out{0.0, 0.0, 0.0, 0.0};
    const double u_skip = 10.0 * traj.dt;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = traj.times[i];
        const DeltaPathPoint p = delta_path(delta, t);
        out.x_error = std::max(out.x_error, std::abs(traj.x[i] - p.x) / x_ref);
        out.w_error = std::max(out.w_error, std::abs(traj.w[i] - p.w) / w_ref);
        if (t >= u_skip) {
            out.u_delta_error =
                std::max(out.u_delta_error, std::abs(traj.u_delta[i] - p.u_delta) / u_ref);
        }
    }
    out.max_error = std::max({out.x_error, out.w_error, out.u_delta_error});
    return out;
}

}  // namespace awr
