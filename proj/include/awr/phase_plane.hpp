#pragma once

#include <string>

#include "awr/model.hpp"

namespace awr {

/// Position of the right state relative to the wave curves through the left
/// state in the (rho, v) plane. J2 is v = u-, S is the asymptote
/// v = u- - A/rho- of J1.
enum class Region {
    RegionI,            ///< u+ > u-
    OnJ2,               ///< u+ == u-
    RegionII,           ///< u- - A/rho- < u+ < u-
    BoundaryS,          ///< u+ == u- - A/rho-
    RegionIIIInterior,  ///< u+ < u- - A/rho-
};

/// Exact comparisons by default. A positive `tol` widens both boundaries to
/// |u+ - boundary| <= tol (used by sweep drivers).
Region classify(const RiemannSetup& setup, double tol = 0.0);

/// True for BoundaryS and RegionIIIInterior, where the solution carries a
/// delta shock.
bool is_delta_region(Region region);

/// Velocity on J1 through the left state: v - A/rho = u- - A/rho-.
double j1_curve(double rho, const State& left, const ModelParams& params);

struct Thresholds {
    double A0;         ///< rho- (u- - u+): RegionIII (closed) for A <= A0
    double A1;         ///< rho- u-: RegionII for A0 < A < A1
    bool degenerate;   ///< A0 == A1, i.e. u+ == 0
};

/// Pressure thresholds for data with u+ < u- and u- > 0.
Thresholds thresholds(const RiemannSetup& setup);

std::string to_string(Region region);

/// Inverse of to_string; throws DomainError for unknown names.
Region region_from_string(const std::string& name);

}  // namespace awr
