#pragma once

#include <string>
#include <vector>

#include "awr/exact_riemann.hpp"

namespace awr {

/// One pressure value of a sweep. Fields that do not apply to the solution
/// type at this A are NaN.
struct LimitRecord {
    double A;
    Region region;
    double rho_star;
    double sigma1_0;   ///< J1 speed at t = 0
    double sigma2_0;   ///< J2 speed at t = 0
    double v_delta;
    double w0;
    /// Deviations from the sweep's analytic targets, keyed by name (see the
    /// individual sweeps). Order is stable.
    std::vector<std::pair<std::string, double>> errors;
};

struct LimitTargets {
    std::vector<std::pair<std::string, double>> values;
};

struct LimitSweepReport {
    std::string kind;  ///< "a0", "zero" or "vacuum"
    RiemannSetup setup;
    std::vector<LimitRecord> records;
    LimitTargets targets;
    /// Empirical log-log slopes of selected error columns against A (or
    /// against A - A0); NaN when the errors vanish identically.
    std::vector<std::pair<std::string, double>> slopes;
    bool passed = true;
    std::vector<std::string> failures;
};

/// A0 + (A1 - A0) 2^-j for j = 1..count.
std::vector<double> default_a0_sequence(const RiemannSetup& setup, int count = 20);

/// A0 2^-j for j = 1..count.
std::vector<double> default_zero_sequence(const RiemannSetup& setup, int count = 20);

/// Sweep A down to A0 = rho- (u- - u+) through region II. Per A it records
/// rho* = A rho- / (A - A0), the contact speeds, and the errors
///   sigma1_gap:    |sigma1(0) - u+|  (sigma2(0) = u+ exactly)
///   mass_identity: |rho* (x2 - x1) - A t| / (A t) at each probe time (max)
///   momentum_identity: same for the rho* (v* + beta t) integral
///   blowup:        |rho* (A - A0) / A - rho-| / rho-
/// Targets compare the limit objects w = A0 t, u_d = u+ + beta t,
/// x = u+ t + beta t^2 / 2 with the delta solution solved directly at A = A0
/// (errors delta_v, delta_w0 on the report's targets).
///
/// Throws DomainError unless u+ < u- and every A lies in (A0, A1).
LimitSweepReport sweep_to_A0(const RiemannSetup& setup, const std::vector<double>& A_values,
                             const std::vector<double>& probe_times = {0.5, 1.0, 2.0});

/// Sweep A down to 0 through region III and compare v_delta(A), w0(A) and the
/// path at t = 1 with the transport delta (errors v_delta, w0, x_at_1). Slopes
/// of the v_delta and w0 errors against A are fitted on log-log axes.
///
/// Throws DomainError unless u+ < u- and every A is in (0, A0].
LimitSweepReport sweep_to_zero(const RiemannSetup& setup, const std::vector<double>& A_values);

/// Sweep A down to 0 for u- <= u+. For u- < u+ the records carry
/// rho*(A) (error rho_star) and the contact speeds (errors sigma1, sigma2
/// against u-, u+); for u- == u+ the single contact is checked at every A.
///
/// Throws DomainError for u- > u+ or non-positive A.
LimitSweepReport vacuum_limit(const RiemannSetup& setup, const std::vector<double>& A_values);

/// Least-squares slope of log(errors) against log(params), skipping zero
/// errors; NaN when fewer than two points remain.
double loglog_slope(const std::vector<double>& params, const std::vector<double>& errors);

double error_of(const LimitRecord& record, const std::string& name);

}  // namespace awr
