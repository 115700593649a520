#pragma once

#include <vector>

#include "awr/exact_riemann.hpp"

namespace awr {

struct FvGrid {
    double x_min = -2.0;
    double x_max = 4.0;
    int n_cells = 2000;
    double cfl = 0.45;  ///< in (0, 0.9]
    double t_end = 0.5;
};

/// Cell averages of m = rho and q = rho (u + P) = rho u - A.
struct FvField {
    double x_min = 0.0;
    double dx = 0.0;
    double time = 0.0;
    double A = 0.0;
    std::vector<double> m;
    std::vector<double> q;

    std::size_t size() const { return m.size(); }
    double x_center(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx; }
    double velocity(std::size_t i) const { return (q[i] + A) / m[i]; }
    double total_mass() const;
    double total_q() const;
};

struct FvStats {
    std::size_t steps = 0;
    std::size_t rejected_steps = 0;   ///< positivity failures retried with half the step
    std::size_t cap_events = 0;       ///< cell velocities clipped to the cap
    std::size_t floor_events = 0;     ///< cells lifted to the density floor
    /// Per-step |delta sum(m dx) - dt (boundary mass flux)| / sum(m dx), max over steps.
    double max_mass_balance_error = 0.0;
    /// Per-step |delta sum(q dx) - dt (boundary q flux) - beta dt sum(m dx)| / sum(|q| dx).
    double max_q_balance_error = 0.0;
};

struct FvResult {
    FvField field;                  ///< at t_end
    std::vector<FvField> snapshots; ///< at the requested times, in order
    FvStats stats;
};

struct FvOptions {
    /// Times in [0, t_end] at which to store a copy of the field.
    std::vector<double> snapshot_times;
};

inline constexpr double kFvDensityFloor = 1e-12;

/// First-order finite-volume solution of the frictional system from the
/// Riemann data, on a uniform grid with zero-gradient outflow boundaries.
/// Each step applies a local Lax-Friedrichs update of (m, q) with flux
/// u (m, q), u = (q + A) / m, followed by the exact source step
/// q <- q + beta m dt. The step size is cfl dx / max(|u| + |u - A/rho|).
///
/// Throws DomainError for invalid grids (n_cells < 100, cfl outside
/// (0, 0.9], empty domain, t_end < 0).
FvResult run_fv(const RiemannSetup& setup, const FvGrid& grid, const FvOptions& options = {});

struct Concentration {
    double measured;   ///< excess mass over the exact side states inside the window
    double predicted;  ///< w(t) = w0 t
};

/// Excess mass within `window_cells` cells of the exact delta position.
/// Throws DomainError when the window leaves the grid.
Concentration measure_concentration(const FvField& field, const DeltaShockPattern& delta,
                                    int window_cells);

struct WaveLocation {
    double time;
    std::size_t wave;  ///< index into structure(solution).speeds0
    double x_exact;
    double x_numeric;
    double error_cells;
    bool detected;
};

/// Locates every wave of `solution` in each snapshot (steepest density jump
/// for contacts, density maximum for a delta) and reports its distance to the
/// exact path in cell widths. Searches are confined to the region closer to
/// the wave than to its neighbours. Throws DomainError for fewer than two
/// snapshots.
std::vector<WaveLocation> compare_speeds(const std::vector<FvField>& snapshots,
                                         const WaveSolution& solution);

}  // namespace awr
