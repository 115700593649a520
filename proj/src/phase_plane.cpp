#include "awr/phase_plane.hpp"

#include <cmath>

namespace awr {

Region classify(const RiemannSetup& setup, double tol) {
    const double u_minus = setup.left.vel;
    const double u_plus = setup.right.vel;
    const double s_curve = u_minus - setup.params.A / setup.left.rho;

    if (std::abs(u_plus - u_minus) <= tol) {
        return Region::OnJ2;
    }
    if (u_plus > u_minus) {
        return Region::RegionI;
    }
    if (std::abs(u_plus - s_curve) <= tol) {
        return Region::BoundaryS;
    }
    return u_plus > s_curve ? Region::RegionII : Region::RegionIIIInterior;
}

bool is_delta_region(Region region) {
    return region == Region::BoundaryS || region == Region::RegionIIIInterior;
}

double j1_curve(double rho, const State& left, const ModelParams& params) {
    if (!(params.A > 0.0)) {
        throw NotApplicable("J1 curve is undefined in the transport limit A = 0");
    }
    if (!(rho > kDensityFloor) || !(left.rho > kDensityFloor)) {
        throw DomainError("j1_curve requires positive densities");
    }
    return left.vel - params.A / left.rho + params.A / rho;
}

Thresholds thresholds(const RiemannSetup& setup) {
    const double u_minus = setup.left.vel;
    const double u_plus = setup.right.vel;
    if (!(u_plus < u_minus)) {
        throw NotApplicable("pressure thresholds require u+ < u-");
    }
    if (!(u_minus > 0.0)) {
        throw NotApplicable("pressure thresholds require u- > 0");
    }
    const double A0 = setup.left.rho * (u_minus - u_plus);
    const double A1 = setup.left.rho * u_minus;
    return {A0, A1, A0 == A1};
}

std::string to_string(Region region) {
    switch (region) {
        case Region::RegionI: return "I";
        case Region::OnJ2: return "J2";
        case Region::RegionII: return "II";
        case Region::BoundaryS: return "S";
        case Region::RegionIIIInterior: return "III";
    }
    return "?";
}

Region region_from_string(const std::string& name) {
    for (Region r : {Region::RegionI, Region::OnJ2, Region::RegionII, Region::BoundaryS,
                     Region::RegionIIIInterior}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    throw DomainError("unknown region tag '" + name + "'");
}

}  // namespace awr
