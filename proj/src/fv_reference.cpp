#include "awr/fv_reference.hpp"

#include <algorithm>
#include <cmath>

namespace awr {

double FvField::total_mass() const {
    double sum = 0.0;
    for (double v : m) {
        sum += v;
    }
    return sum * dx;
}

double FvField::total_q() const {
    double sum = 0.0;
    for (double v : q) {
        sum += v;
    }
    return sum * dx;
}

namespace {

constexpr int kMaxHalvings = 30;

struct CellState {
    double m;
    double q;
    double u;       // (q + A) / m, capped
    double speed;   // max(|u|, |u - A/m|)
};

class LlfScheme {
public:
    LlfScheme(double A, double cap) : A_(A), cap_(cap) {}

    CellState cell(double m, double q, std::size_t& cap_events) const {
        double u = (q + A_) / m;
        if (std::abs(u) > cap_) {
            u = std::copysign(cap_, u);
            ++cap_events;
        }
        return {m, q, u, std::max(std::abs(u), std::abs(u - A_ / m))};
    }

    // Local Lax-Friedrichs flux of (m, q) between two cells.
    std::pair<double, double> flux(const CellState& l, const CellState& r) const {
        const double a = std::max(l.speed, r.speed);
        return {0.5 * (l.u * l.m + r.u * r.m) - 0.5 * a * (r.m - l.m),
                0.5 * (l.u * l.q + r.u * r.q) - 0.5 * a * (r.q - l.q)};
    }

private:
    double A_;
    double cap_;
};

void check_grid(const FvGrid& grid) {
    if (grid.n_cells < 100) {
        throw DomainError("FV grid needs at least 100 cells");
    }
    if (!(grid.cfl > 0.0 && grid.cfl <= 0.9)) {
        throw DomainError("CFL number must lie in (0, 0.9]");
    }
    if (!(grid.x_max > grid.x_min)) {
        throw DomainError("FV domain is empty");
    }
    if (!(grid.t_end >= 0.0) || !std::isfinite(grid.t_end)) {
        throw DomainError("t_end must be non-negative");
    }
}

}  // namespace

FvResult run_fv(const RiemannSetup& setup, const FvGrid& grid, const FvOptions& options) {
    validate(setup);
    check_grid(grid);
    const double A = setup.params.A;
    const double beta = setup.params.beta;
    const auto n = static_cast<std::size_t>(grid.n_cells);
    const double cap = 10.0 * std::max(std::abs(setup.left.vel), std::abs(setup.right.vel)) +
                       10.0 * std::abs(beta) * grid.t_end;
    const LlfScheme scheme(A, cap > 0.0 ? cap : 1.0);

    FvResult result;
    FvField& f = result.field;
    f.x_min = grid.x_min;
    f.dx = (grid.x_max - grid.x_min) / static_cast<double>(n);
    f.A = A;
    f.m.resize(n);
    f.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const State& s = f.x_center(i) < 0.0 ? setup.left : setup.right;
        f.m[i] = s.rho;
        f.q[i] = s.rho * s.vel - A;
    }

    std::vector<double> snaps = options.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    auto take_snapshots = [&]() {
        while (next_snap < snaps.size() && snaps[next_snap] <= f.time) {
            result.snapshots.push_back(f);
            ++next_snap;
        }
    };
    take_snapshots();

    FvStats& stats = result.stats;
    std::vector<CellState> cells(n);
    std::vector<double> flux_m(n + 1);
    std::vector<double> flux_q(n + 1);
    std::vector<double> m_new(n);
    std::vector<double> q_new(n);

    while (f.time < grid.t_end) {
        double max_speed = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cells[i] = scheme.cell(f.m[i], f.q[i], stats.cap_events);
            max_speed = std::max(max_speed, std::abs(cells[i].u) + std::abs(cells[i].u - A / f.m[i]));
        }
        // Interface k sits between cells k-1 and k; ghosts copy the edge cells.
        for (std::size_t k = 0; k <= n; ++k) {
            const CellState& l = cells[k == 0 ? 0 : k - 1];
            const CellState& r = cells[k == n ? n - 1 : k];
            std::tie(flux_m[k], flux_q[k]) = scheme.flux(l, r);
        }

        double target = grid.t_end;
        if (next_snap < snaps.size()) {
            target = std::min(target, snaps[next_snap]);
        }
        double dt = max_speed > 0.0 ? grid.cfl * f.dx / max_speed : target - f.time;
        dt = std::min(dt, target - f.time);

        bool accepted = false;
        for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
            const double ratio = dt / f.dx;
            bool positive = true;
            for (std::size_t i = 0; i < n; ++i) {
                m_new[i] = f.m[i] - ratio * (flux_m[i + 1] - flux_m[i]);
                q_new[i] = f.q[i] - ratio * (flux_q[i + 1] - flux_q[i]);
                positive = positive && m_new[i] > kFvDensityFloor;
            }
            if (positive || attempt == kMaxHalvings) {
                accepted = positive;
                break;
            }
            ++stats.rejected_steps;
            dt *= 0.5;
        }
        if (!accepted) {
            for (double& v : m_new) {
                if (!(v > kFvDensityFloor)) {
                    v = kFvDensityFloor;
                    ++stats.floor_events;
                }
            }
        }

        const double mass_before = f.total_mass();
        const double q_before = f.total_q();
        f.m.swap(m_new);
        f.q.swap(q_new);
        const double mass_after = f.total_mass();
        for (std::size_t i = 0; i < n; ++i) {
            f.q[i] += beta * f.m[i] * dt;
        }
        f.time = (f.time + dt >= target) ? target : f.time + dt;
        ++stats.steps;

        const double mass_expected = mass_before + dt * (flux_m[0] - flux_m[n]);
        stats.max_mass_balance_error =
            std::max(stats.max_mass_balance_error,
                     std::abs(mass_after - mass_expected) / std::abs(mass_after));
        double q_abs = 0.0;
        for (double v : f.q) {
            q_abs += std::abs(v);
        }
        q_abs *= f.dx;
        const double q_expected = q_before + dt * (flux_q[0] - flux_q[n]) + beta * dt * mass_after;
        if (q_abs > 0.0) {
            stats.max_q_balance_error = std::max(
                stats.max_q_balance_error, std::abs(f.total_q() - q_expected) / q_abs);
        }
        take_snapshots();
    }
    return result;
}

Concentration measure_concentration(const FvField& field, const DeltaShockPattern& delta,
                                    int window_cells) {
    if (window_cells < 0) {
        throw DomainError("window must be non-negative");
    }
    const DeltaPathPoint p = delta_path(delta, field.time);
    const double centre = std::floor((p.x - field.x_min) / field.dx);
    const double lo = centre - window_cells;
    const double hi = centre + window_cells;
    if (lo < 0.0 || hi >= static_cast<double>(field.size())) {
        throw DomainError("concentration window leaves the grid");
    }
    double excess = 0.0;
    for (auto i = static_cast<std::size_t>(lo); i <= static_cast<std::size_t>(hi); ++i) {
        const double background = field.x_center(i) < p.x ? delta.left.rho : delta.right.rho;
        excess += (field.m[i] - background) * field.dx;
    }
    return {excess, p.w};
}

std::vector<WaveLocation> compare_speeds(const std::vector<FvField>& snapshots,
                                         const WaveSolution& solution) {
    if (snapshots.size() < 2) {
        throw DomainError("compare_speeds needs at least two snapshots");
    }
    const WaveStructure ws = structure(solution);
    const double beta = ws.params.beta;
    const std::size_t waves = ws.speeds0.size();

    std::vector<WaveLocation> out;
    for (const FvField& f : snapshots) {
        const double t = f.time;
        std::vector<double> exact(waves);
        for (std::size_t w = 0; w < waves; ++w) {
            exact[w] = path_position(ws.speeds0[w], beta, t);
        }
        const double x_max = f.x_min + f.dx * static_cast<double>(f.size());
        for (std::size_t w = 0; w < waves; ++w) {
            WaveLocation loc{t, w, exact[w], exact[w], 0.0, true};
            if (t == 0.0) {
                out.push_back(loc);
                continue;
            }
            const double lo = w == 0 ? f.x_min : 0.5 * (exact[w - 1] + exact[w]);
            const double hi = w + 1 == waves ? x_max : 0.5 * (exact[w] + exact[w + 1]);
            const bool is_delta = ws.delta && ws.delta->path == w;

            double best = -1.0;
            double best_x = exact[w];
            double peak = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                peak = std::max(peak, f.m[i]);
                if (is_delta) {
                    const double xc = f.x_center(i);
                    if (xc >= lo && xc <= hi && f.m[i] > best) {
                        best = f.m[i];
                        best_x = xc;
                    }
                } else if (i + 1 < f.size()) {
                    const double xi = f.x_min + f.dx * static_cast<double>(i + 1);
                    const double jump = std::abs(f.m[i + 1] - f.m[i]);
                    if (xi >= lo && xi <= hi && jump > best) {
                        best = jump;
                        best_x = xi;
                    }
                }
            }
            // A delta must rise above both side states to count as detected.
            const double flat =
                is_delta ? std::max(ws.segments[w].rho, ws.segments[w + 1].rho) : 1e-12 * peak;
            loc.detected = best > flat;
            loc.x_numeric = best_x;
            loc.error_cells = loc.detected ? std::abs(best_x - exact[w]) / f.dx : 0.0;
            out.push_back(loc);
        }
    }
    return out;
}

}  // namespace awr
