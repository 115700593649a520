#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "awr/exact_riemann.hpp"
#include "awr/fv_reference.hpp"
#include "awr/grh_ode.hpp"
#include "awr/pressure_limits.hpp"
#include "awr/weak_residual.hpp"

namespace awr::io {

using Json = nlohmann::ordered_json;

/// 17 significant digits, the CSV number format.
std::string format_double(double value);

Json setup_to_json(const RiemannSetup& setup);
RiemannSetup setup_from_json(const Json& j);

/// Solution descriptor: region tag, pattern name, the pattern's defining
/// numbers (rho*, v*, v_delta, w0, entropy margins, sigma, w_slope as
/// applicable) and the path coefficients x_i(t) = speed0 t + beta t^2 / 2.
Json solution_to_json(const WaveSolution& solution);

/// Rebuilds a solution from the stored numbers of a descriptor (no re-solve).
/// Throws DomainError for malformed descriptors.
WaveSolution solution_from_json(const Json& j);

struct PlotData {
    std::string fields_csv;  ///< t,x,rho,u,on_delta
    std::string paths_csv;   ///< t plus one column per wave path
};

/// Samples the solution on every (t, x) pair and tabulates the wave paths on
/// 101 uniformly spaced times in [0, max(t_list)]. On the delta the rho and u
/// columns hold the weight and u_delta; in vacuum rho = 0 and u = nan.
/// Throws DomainError for non-positive times.
PlotData emit_plotdata(const WaveSolution& solution, const std::vector<double>& t_list,
                       const std::vector<double>& x_grid);

std::string trajectory_csv(const GrhTrajectory& trajectory);
std::string residual_csv(const SuiteReport& suite);
std::string sweep_csv(const LimitSweepReport& report);
Json sweep_to_json(const LimitSweepReport& report);
std::string field_csv(const FvField& field);

}  // namespace awr::io
