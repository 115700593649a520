#pragma once

#include <cstdint>
#include <vector>

#include "awr/exact_riemann.hpp"

namespace awr {

/// Compactly supported polynomial bump
///
///   psi(x, t) = ((1 - s_x^2) (1 - s_t^2))^k,  s_x = (x - x0)/r_x, s_t = (t - t0)/r_t
///
/// on the box |s_x| < 1, |s_t| < 1 and zero outside. psi is C^(k-1) and its
/// partial derivatives are evaluated in closed form.
class TestFunction {
public:
    TestFunction(double x0, double t0, double rx, double rt, int order = 4);

    double value(double x, double t) const;
    double dx(double x, double t) const;
    double dt(double x, double t) const;

    double x0() const { return x0_; }
    double t0() const { return t0_; }
    double rx() const { return rx_; }
    double rt() const { return rt_; }
    int order() const { return order_; }

    double x_lo() const { return x0_ - rx_; }
    double x_hi() const { return x0_ + rx_; }
    double t_lo() const { return t0_ - rt_; }
    double t_hi() const { return t0_ + rt_; }

private:
    double x0_;
    double t0_;
    double rx_;
    double rt_;
    int order_;
};

struct ResidualOptions {
    /// Fixed: the frictional system with its source term, delta terms
    /// weighted by u_delta(t). Moving: the conservative system in v.
    Frame frame = Frame::Fixed;
    /// Include beta * integral of w(t) psi(x(t), t) dt in the momentum
    /// residual (fixed frame only).
    bool delta_source = true;
};

struct ResidualReport {
    double R1 = 0.0;     ///< mass equation
    double R2 = 0.0;     ///< momentum-type equation
    double scale = 0.0;  ///< integral of the magnitudes of every term of both equations
    int quad_level = 0;

    double normalized() const;
};

/// Weak-form residuals of `solution` against `psi`:
///
///   R1 = int int (rho psi_t + rho u psi_x) + int w(t) dpsi/dt(x(t), t) dt
///   R2 = int int (rho (u+P) psi_t + rho u (u+P) psi_x + beta rho psi)
///        + int (w u_d dpsi/dt + beta w psi)(x(t), t) dt
///
/// where dpsi/dt is the derivative along the delta path. Area integrals are
/// split along every wave path and at the times where a path crosses the
/// support edge, so each panel integrand is a polynomial; each panel uses a
/// `quad_level`-point Gauss-Legendre tensor rule.
///
/// Throws DomainError when psi reaches t <= 0 or quad_level < 1.
ResidualReport residual(const WaveSolution& solution, const TestFunction& psi, int quad_level,
                        const ResidualOptions& options = {});

struct SuiteReport {
    double worst = 0.0;  ///< max over psi of max(|R1|, |R2|) / scale
    std::vector<TestFunction> functions;
    std::vector<ResidualReport> reports;
};

/// Draws `count` test functions placed on random waves of the solution, cycling
/// through straddling, left-of-wave and right-of-wave centres with random
/// radii, and evaluates the worst normalized residual.
SuiteReport residual_suite(const WaveSolution& solution, int count, std::uint64_t seed,
                           int quad_level, const ResidualOptions& options = {});

std::vector<TestFunction> draw_test_functions(const WaveSolution& solution, int count,
                                              std::uint64_t seed);

struct ConvergenceReport {
    std::vector<int> levels;
    std::vector<double> residuals;  ///< normalized
    double slope = 0.0;             ///< d log(residual) / d log(level), NaN if not estimated
    bool at_floor = false;          ///< first level already at the roundoff floor
};

/// Normalized residuals below this are treated as roundoff.
inline constexpr double kResidualFloor = 1e-13;

/// Least-squares slope of log(residual) against log(level) over the levels
/// whose residual is above kResidualFloor. Throws DomainError for fewer than
/// three levels.
ConvergenceReport convergence_order(const WaveSolution& solution, const TestFunction& psi,
                                    const std::vector<int>& levels,
                                    const ResidualOptions& options = {});

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

}  // namespace awr
