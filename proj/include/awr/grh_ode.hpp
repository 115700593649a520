#pragma once

#include <optional>
#include <string>
#include <vector>

#include "awr/exact_riemann.hpp"
#include "awr/model.hpp"

namespace awr {

/// Sampled solution of the generalized Rankine-Hugoniot system along a delta
/// shock. `wu` holds the integrated momentum variable (w u_delta in the fixed
/// frame, w v_delta in the moving frame); `u_delta` is always the fixed-frame
/// delta velocity.
struct GrhTrajectory {
    RiemannSetup setup;
    Frame frame = Frame::Fixed;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> wu;
    std::vector<double> u_delta;
    /// Set when w dropped to zero or below after t = 0; the trajectory stops
    /// at the last accepted step.
    std::optional<std::string> failure;
};

/// Classical fixed-step RK4 integration of
///
///   dx/dt       = u_d
///   dw/dt       = u_d [rho] - [rho u]
///   d(w u_d)/dt = u_d [rho (u - A/rho)] - [rho u (u - A/rho)] + beta w
///
/// with jumps evaluated on u(+-) = u+- + beta t, from x = w = w u_d = 0.
/// u_d = (w u_d) / w once w exceeds 1e-12 (1 + w0 t_end); below that the
/// algebraic root v_delta + beta t is used. With `frame == Moving` the
/// conservative system in v = u - beta t (no source term) is integrated
/// instead.
///
/// Throws NotApplicable for data without a delta shock and DomainError for
/// non-positive t_end or dt.
GrhTrajectory integrate_grh(const RiemannSetup& setup, double t_end, double dt,
                            Frame frame = Frame::Fixed);

struct GrhComparison {
    double x_error;
    double w_error;
    double u_delta_error;
    double max_error;
};

/// Sup over the time grid of |numeric - exact| / max_t |exact| for x, w and
/// u_delta. u_delta is skipped for t < 10 dt. Throws DomainError when the
/// trajectory is empty, its arrays disagree in length, or it was computed for
/// other data than `delta`.
GrhComparison compare_to_closed_form(const GrhTrajectory& trajectory,
                                     const DeltaShockPattern& delta);

}  // namespace awr
