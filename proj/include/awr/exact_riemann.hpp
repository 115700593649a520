#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "awr/model.hpp"
#include "awr/phase_plane.hpp"

namespace awr {

/// J1 and J2 contacts with a constant intermediate state, for right states in
/// regions I and II (including u+ == u-, where J1 has zero strength).
struct TwoContactsPattern {
    State left;
    State right;
    State intermediate;  ///< (rho*, v*) with v* = u+ and A/rho* = u+ - u- + A/rho-
    double j1_speed0;    ///< u- - A/rho-
    double j2_speed0;    ///< u+
    ModelParams params;
};

/// v_delta - u+ and (u- - A/rho-) - v_delta. Both are >= 0 for an admissible
/// delta shock and strictly positive away from the boundary S.
struct EntropyMargins {
    double lower;
    double upper;
};

/// Delta shock on x(t) = v_delta t + beta t^2 / 2 carrying weight w(t) = w0 t.
struct DeltaShockPattern {
    State left;
    State right;
    double v_delta;
    double w0;
    ModelParams params;
    EntropyMargins entropy_margins;
};

enum class TransportKind { Vacuum, SingleContact, TransportDelta };

/// Riemann solutions of the zero-pressure (A = 0) system with the same
/// friction. `sigma` is the t = 0 speed of the single contact or the delta;
/// for vacuum it is unused. `w_slope` is the delta weight slope.
struct TransportPattern {
    TransportKind kind;
    State left;
    State right;
    double sigma;
    double w_slope;
    ModelParams params;
};

using Pattern = std::variant<TwoContactsPattern, DeltaShockPattern, TransportPattern>;

struct WaveSolution {
    Region region;
    Pattern pattern;
    bool negative_velocity = false;  ///< data outside u >= 0; formulas still applied
};

struct SolveOptions {
    /// Boundary tolerance forwarded to classify().
    double boundary_tol = 0.0;
};

// Sample results.
struct Smooth {
    State state;
    friend bool operator==(const Smooth&, const Smooth&) = default;
};
struct OnDelta {
    double weight;
    double u_delta;
    friend bool operator==(const OnDelta&, const OnDelta&) = default;
};
struct InVacuum {
    friend bool operator==(const InVacuum&, const InVacuum&) = default;
};
using SamplePoint = std::variant<Smooth, OnDelta, InVacuum>;

struct DeltaPathPoint {
    double x;
    double sigma;
    double w;
    double u_delta;
};

struct EntropyReport {
    EntropyMargins margins;
    bool ordered;      ///< lambda1(+) <= lambda2(+) <= sigma(0) <= lambda1(-) <= lambda2(-)
    bool strict;       ///< all inequalities strict
    bool consistent;   ///< no margin below -tolerance (otherwise a solver bug)
};

/// Piecewise description shared by sampling, quadrature and plotting. Every
/// wave path has the form x_i(t) = speeds0[i] t + beta t^2 / 2, so the
/// ordering of paths is the same for all t > 0.
struct WaveStructure {
    struct DeltaLine {
        std::size_t path;  ///< index into speeds0
        double w0;         ///< weight slope, w(t) = w0 t
    };

    ModelParams params;
    std::vector<double> speeds0;   ///< nondecreasing
    std::vector<State> segments;   ///< moving frame, size speeds0.size() + 1; rho == 0 is vacuum
    std::optional<DeltaLine> delta;
};

/// Exact Riemann solution. A == 0 dispatches to solve_transport().
WaveSolution solve(const RiemannSetup& setup, const SolveOptions& options = {});

/// Zero-pressure solution: vacuum for u- < u+, one contact for u- == u+, and a
/// delta shock otherwise.
TransportPattern solve_transport(const RiemannSetup& setup);

/// Delta shock for data in BoundaryS or RegionIIIInterior (A > 0). Data up
/// to `boundary_tol` above S are accepted and treated as on S.
DeltaShockPattern solve_delta(const RiemannSetup& setup, double boundary_tol = 0.0);

/// Two contacts for data in regions I and II (A > 0).
TwoContactsPattern solve_two_contacts(const RiemannSetup& setup);

WaveStructure structure(const WaveSolution& solution);

/// x_i(t) for a path with initial speed speed0.
inline double path_position(double speed0, double beta, double t) {
    return speed0 * t + 0.5 * beta * t * t;
}

/// Point value at (x, t), t > 0. A point exactly on a contact returns the
/// right-limit state; a point exactly on the delta path returns OnDelta.
/// Velocities are reported in `frame` (u_delta becomes v_delta when Moving).
SamplePoint sample(const WaveSolution& solution, double x, double t,
                   Frame frame = Frame::Fixed);

DeltaPathPoint delta_path(const DeltaShockPattern& delta, double t);

/// (t, x) where x'(t) changes sign, which exists for beta * v_delta < 0.
std::optional<std::pair<double, double>> turning_point(const DeltaShockPattern& delta);

/// Entropy margins and the four-speed ordering at t = 0.
EntropyReport entropy_check(const DeltaShockPattern& delta, const RiemannSetup& setup);

/// Residual of (rho+ - rho-) v^2 - 2 (rho+ u+ - rho- u-) v
///             + (rho+ u+^2 - rho- u-^2) - A (u+ - u-)
/// together with the sum of the magnitudes of its terms.
struct QuadraticResidual {
    double value;
    double scale;
};
QuadraticResidual delta_quadratic_residual(const RiemannSetup& setup, double v_delta);

/// Setup recovered from a pattern's stored states.
RiemannSetup setup_of(const WaveSolution& solution);

std::string to_string(TransportKind kind);
std::string pattern_name(const WaveSolution& solution);

}  // namespace awr
