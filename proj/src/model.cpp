#include "awr/model.hpp"

#include <cmath>

namespace awr {

namespace {

void require_density(double rho, const char* name) {
    if (!std::isfinite(rho) || rho <= kDensityFloor) {
        throw DomainError(std::string(name) + " must be a finite density above the floor");
    }
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

}  // namespace

double pressure(double rho, const ModelParams& params) {
    require_density(rho, "rho");
    return -params.A / rho;
}

CharSpeeds eigenvalues(const State& state, double t, const ModelParams& params) {
    require_density(state.rho, "rho");
    const State moving = frame_convert(state, t, params, Frame::Moving);
    const double lambda2 = moving.vel + params.beta * t;
    return {lambda2 - params.A / state.rho, lambda2};
}

std::pair<double, double> right_eigenvector(int family, const State& state,
                                            const ModelParams& params) {
    require_density(state.rho, "rho");
    switch (family) {
        case 1: return {state.rho, -params.A / state.rho};
        case 2: return {1.0, 0.0};
        default: throw DomainError("characteristic family must be 1 or 2");
    }
}

State frame_convert(const State& state, double t, const ModelParams& params, Frame target) {
    if (state.frame == target) {
        return state;
    }
    const double shift = params.beta * t;
    State out = state;
    out.frame = target;
    out.vel = target == Frame::Fixed ? state.vel + shift : state.vel - shift;
    return out;
}

void validate(const RiemannSetup& setup) {
    require_density(setup.left.rho, "rho_l");
    require_density(setup.right.rho, "rho_r");
    require_finite(setup.left.vel, "u_l");
    require_finite(setup.right.vel, "u_r");
    require_finite(setup.params.A, "A");
    require_finite(setup.params.beta, "beta");
    if (setup.params.A < 0.0) {
        throw DomainError("A must be non-negative");
    }
}

bool has_negative_velocity(const RiemannSetup& setup) {
    return setup.right.vel < 0.0 || setup.left.vel < 0.0;
}

RiemannSetup make_setup(double rho_l, double u_l, double rho_r, double u_r, double A,
                        double beta) {
    return {{rho_l, u_l, Frame::Moving}, {rho_r, u_r, Frame::Moving}, {A, beta}};
}

std::string to_string(Frame frame) {
    return frame == Frame::Fixed ? "fixed" : "moving";
}

}  // namespace awr
