#include "awr/weak_residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include <gsl/gsl_integration.h>

namespace awr {

TestFunction::TestFunction(double x0, double t0, double rx, double rt, int order)
    : x0_(x0), t0_(t0), rx_(rx), rt_(rt), order_(order) {
    if (!(rx > 0.0) || !(rt > 0.0) || !std::isfinite(x0) || !std::isfinite(t0)) {
        throw DomainError("test function needs finite centre and positive radii");
    }
    if (order < 4) {
        throw DomainError("test function order must be at least 4");
    }
}

double TestFunction::value(double x, double t) const {
    const double sx = (x - x0_) / rx_;
    const double st = (t - t0_) / rt_;
    if (std::abs(sx) >= 1.0 || std::abs(st) >= 1.0) {
        return 0.0;
    }
    return std::pow((1.0 - sx * sx) * (1.0 - st * st), order_);
}

double TestFunction::dx(double x, double t) const {
    const double sx = (x - x0_) / rx_;
    const double st = (t - t0_) / rt_;
    if (std::abs(sx) >= 1.0 || std::abs(st) >= 1.0) {
        return 0.0;
    }
    const double gx = 1.0 - sx * sx;
    const double gt = 1.0 - st * st;
    return order_ * std::pow(gx * gt, order_ - 1) * gt * (-2.0 * sx / rx_);
}

double TestFunction::dt(double x, double t) const {
    const double sx = (x - x0_) / rx_;
    const double st = (t - t0_) / rt_;
    if (std::abs(sx) >= 1.0 || std::abs(st) >= 1.0) {
        return 0.0;
    }
    const double gx = 1.0 - sx * sx;
    const double gt = 1.0 - st * st;
    return order_ * std::pow(gx * gt, order_ - 1) * gx * (-2.0 * st / rt_);
}

double ResidualReport::normalized() const {
    const double worst = std::max(std::abs(R1), std::abs(R2));
    if (scale > 0.0) {
        return worst / scale;
    }
    return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

GaussRule gauss_legendre(int n) {
    if (n < 1) {
        throw DomainError("quadrature level must be positive");
    }
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
        table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
              &gsl_integration_glfixed_table_free);
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &rule.nodes[i],
                                      &rule.weights[i], table.get());
    }
    return rule;
}

namespace {

// Times in (lo, hi) at which speed0 t + beta t^2 / 2 == level.
void crossing_times(double speed0, double beta, double level, double lo, double hi,
                    std::vector<double>& out) {
    auto keep = [&](double t) {
        if (std::isfinite(t) && t > lo && t < hi) {
            out.push_back(t);
        }
    };
    if (beta == 0.0) {
        if (speed0 != 0.0) {
            keep(level / speed0);
        }
        return;
    }
    // 0.5 beta t^2 + speed0 t - level = 0
    const double disc = speed0 * speed0 + 2.0 * beta * level;
    if (disc < 0.0) {
        return;
    }
    const double root = std::sqrt(disc);
    const double q = -(speed0 + std::copysign(root, speed0));
    if (q != 0.0) {
        keep(q / beta);
        keep(-2.0 * level / q);
    } else {
        keep(0.0);
    }
}

struct Accumulator {
    double r1 = 0.0;
    double r2 = 0.0;
    double scale = 0.0;
};

}  // namespace

ResidualReport residual(const WaveSolution& solution, const TestFunction& psi, int quad_level,
                        const ResidualOptions& options) {
    if (!(psi.t_lo() > 0.0)) {
        throw DomainError("test function support must lie in t > 0");
    }
    const GaussRule rule = gauss_legendre(quad_level);
    const WaveStructure ws = structure(solution);
    const double beta = ws.params.beta;
    const double A = ws.params.A;
    const bool fixed = options.frame == Frame::Fixed;

    // Time panels: support ends plus every path crossing of the support edges.
    std::vector<double> t_breaks{psi.t_lo(), psi.t_hi()};
    for (double s : ws.speeds0) {
        crossing_times(s, beta, psi.x_lo(), psi.t_lo(), psi.t_hi(), t_breaks);
        crossing_times(s, beta, psi.x_hi(), psi.t_lo(), psi.t_hi(), t_breaks);
    }
    std::sort(t_breaks.begin(), t_breaks.end());
    t_breaks.erase(std::unique(t_breaks.begin(), t_breaks.end()), t_breaks.end());

    Accumulator acc;
    std::vector<double> x_breaks;
    x_breaks.reserve(ws.speeds0.size() + 2);

    for (std::size_t p = 0; p + 1 < t_breaks.size(); ++p) {
        const double ta = t_breaks[p];
        const double tb = t_breaks[p + 1];
        const double t_half = 0.5 * (tb - ta);
        const double t_mid = 0.5 * (tb + ta);

        for (int j = 0; j < quad_level; ++j) {
            const double t = t_mid + t_half * rule.nodes[j];
            const double wt = t_half * rule.weights[j];

            x_breaks.assign({psi.x_lo()});
            for (double s : ws.speeds0) {
                const double xp = path_position(s, beta, t);
                if (xp > psi.x_lo() && xp < psi.x_hi()) {
                    x_breaks.push_back(xp);
                }
            }
            x_breaks.push_back(psi.x_hi());

            for (std::size_t q = 0; q + 1 < x_breaks.size(); ++q) {
                const double xa = x_breaks[q];
                const double xb = x_breaks[q + 1];
                if (!(xb > xa)) {
                    continue;
                }
                const double x_mid = 0.5 * (xa + xb);
                std::size_t seg = 0;
                for (std::size_t i = 0; i < ws.speeds0.size(); ++i) {
                    if (x_mid > path_position(ws.speeds0[i], beta, t)) {
                        seg = i + 1;
                    }
                }
                const State& s = ws.segments[seg];
                if (s.rho == 0.0) {
                    continue;
                }
                const double rho = s.rho;
                const double transport = s.vel + beta * t;     // u, or v + beta t
                const double vel = fixed ? transport : s.vel;  // conserved-variable velocity
                const double press = -A / rho;
                const double x_half = 0.5 * (xb - xa);

                for (int i = 0; i < quad_level; ++i) {
                    const double x = x_mid + x_half * rule.nodes[i];
                    const double w = wt * x_half * rule.weights[i];
                    const double pt = psi.dt(x, t);
                    const double px = psi.dx(x, t);

                    const double a1 = rho * pt;
                    const double a2 = rho * transport * px;
                    const double b1 = rho * (vel + press) * pt;
                    const double b2 = rho * (vel + press) * transport * px;
                    const double b3 = fixed ? beta * rho * psi.value(x, t) : 0.0;

                    acc.r1 += w * (a1 + a2);
                    acc.r2 += w * (b1 + b2 + b3);
                    acc.scale += w * (std::abs(a1) + std::abs(a2) + std::abs(b1) +
                                      std::abs(b2) + std::abs(b3));
                }
            }
        }

        if (ws.delta) {
            const double speed0 = ws.speeds0[ws.delta->path];
            for (int j = 0; j < quad_level; ++j) {
                const double t = t_mid + t_half * rule.nodes[j];
                const double wt = t_half * rule.weights[j];
                const double x = path_position(speed0, beta, t);
                if (!(x > psi.x_lo() && x < psi.x_hi())) {
                    continue;
                }
                const double sigma = speed0 + beta * t;
                const double weight = ws.delta->w0 * t;
                const double along = psi.dt(x, t) + sigma * psi.dx(x, t);
                const double carried = fixed ? sigma : speed0;

                const double d1 = weight * along;
                const double d2 = weight * carried * along;
                const double d3 =
                    fixed && options.delta_source ? beta * weight * psi.value(x, t) : 0.0;

                acc.r1 += wt * d1;
                acc.r2 += wt * (d2 + d3);
                acc.scale += wt * (std::abs(d1) + std::abs(d2) + std::abs(d3));
            }
        }
    }

    ResidualReport report;
    report.R1 = acc.r1;
    report.R2 = acc.r2;
    report.scale = acc.scale;
    report.quad_level = quad_level;
    return report;
}

std::vector<TestFunction> draw_test_functions(const WaveSolution& solution, int count,
                                              std::uint64_t seed) {
    const WaveStructure ws = structure(solution);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    std::vector<TestFunction> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const double t0 = uniform(0.5, 2.0);
        const double rt = uniform(0.1, 0.45) * t0;
        const double rx = uniform(0.25, 1.5);
        const auto wave = static_cast<std::size_t>(unit(rng) * static_cast<double>(ws.speeds0.size()));
        const double x_wave =
            path_position(ws.speeds0[std::min(wave, ws.speeds0.size() - 1)], ws.params.beta, t0);
        double x0 = x_wave;
        switch (i % 3) {
            case 0: x0 += uniform(-0.5, 0.5) * rx; break;
            case 1: x0 -= uniform(0.6, 0.95) * rx; break;
            default: x0 += uniform(0.6, 0.95) * rx; break;
        }
        out.emplace_back(x0, t0, rx, rt);
    }
    return out;
}

SuiteReport residual_suite(const WaveSolution& solution, int count, std::uint64_t seed,
                           int quad_level, const ResidualOptions& options) {
    if (count < 1) {
        throw DomainError("residual suite needs at least one test function");
    }
    SuiteReport suite;
    suite.functions = draw_test_functions(solution, count, seed);
    suite.reports.reserve(suite.functions.size());
    for (const TestFunction& psi : suite.functions) {
        suite.reports.push_back(residual(solution, psi, quad_level, options));
        suite.worst = std::max(suite.worst, suite.reports.back().normalized());
    }
    return suite;
}

ConvergenceReport convergence_order(const WaveSolution& solution, const TestFunction& psi,
                                    const std::vector<int>& levels,
                                    const ResidualOptions& options) {
    if (levels.size() < 3) {
        throw DomainError("convergence_order needs at least three quadrature levels");
    }
    ConvergenceReport out;
    out.levels = levels;
    for (int level : levels) {
        out.residuals.push_back(residual(solution, psi, level, options).normalized());
    }
    out.at_floor = out.residuals.front() <= kResidualFloor;

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (out.residuals[i] <= kResidualFloor) {
            continue;
        }
        const double lx = std::log(static_cast<double>(levels[i]));
        const double ly = std::log(out.residuals[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    const double denom = n * sxx - sx * sx;
    out.slope = (out.at_floor || n < 2 || denom == 0.0)
                    ? std::numeric_limits<double>::quiet_NaN()
                    : (n * sxy - sx * sy) / denom;
    return out;
}

}  // namespace awr
