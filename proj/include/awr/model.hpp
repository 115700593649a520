#pragma once

#include <stdexcept>
#include <string>
#include <utility>

/// Core types for the Chaplygin-pressure Aw-Rascle system with Coulomb-like
/// friction:
///
///   rho_t + (rho u)_x = 0
///   (rho (u + P))_t + (rho u (u + P))_x = beta rho,    P = -A / rho
///
/// In the moving frame v = u - beta t the system is conservative and both
/// characteristic fields are linearly degenerate.
namespace awr {

/// Raised for inputs outside an operation's domain (non-positive density,
/// t <= 0 for sampling, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an operation is requested for data it does not cover, e.g.
/// thresholds for u+ >= u-.
class NotApplicable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when an internal consistency check fails (a solver bug, not bad
/// input).
class InternalInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Densities at or below this value are treated as non-positive.
inline constexpr double kDensityFloor = 1e-300;

struct ModelParams {
    double A = 1.0;     ///< pressure coefficient, A >= 0; A == 0 is the transport limit
    double beta = 0.0;  ///< frictional acceleration
};

enum class Frame { Fixed, Moving };

/// Density and velocity. `vel` is u in the fixed frame and v = u - beta t in
/// the moving frame.
struct State {
    double rho = 1.0;
    double vel = 0.0;
    Frame frame = Frame::Moving;

    friend bool operator==(const State&, const State&) = default;
};

/// Riemann data. Both states are given at t = 0 where u and v coincide; they
/// are stored with the moving-frame tag.
struct RiemannSetup {
    State left;
    State right;
    ModelParams params;
};

struct CharSpeeds {
    double lambda1;
    double lambda2;
};

/// P = -A / rho.
double pressure(double rho, const ModelParams& params);

/// lambda1 = v + beta t - A/rho, lambda2 = v + beta t for a moving-frame
/// state. A fixed-frame state is accepted and converted first.
CharSpeeds eigenvalues(const State& state, double t, const ModelParams& params);

/// Right eigenvector of family 1 or 2 in (rho, v) coordinates:
/// r1 = (rho, -A/rho), r2 = (1, 0).
std::pair<double, double> right_eigenvector(int family, const State& state,
                                            const ModelParams& params);

/// u = v + beta t (Moving -> Fixed) or v = u - beta t (Fixed -> Moving).
/// Returns the input unchanged when it already has the target tag.
State frame_convert(const State& state, double t, const ModelParams& params, Frame target);

/// Throws DomainError naming the offending field when the setup is unusable
/// (non-finite values, densities at or below the floor, A < 0).
void validate(const RiemannSetup& setup);

/// The formulas hold for any real velocity, but the model is posed for
/// u >= 0. True when the data leave that range (u+ < 0 or u- < 0).
bool has_negative_velocity(const RiemannSetup& setup);

/// Convenience constructor for Riemann data.
RiemannSetup make_setup(double rho_l, double u_l, double rho_r, double u_r, double A,
                        double beta);

std::string to_string(Frame frame);

}  // namespace awr
