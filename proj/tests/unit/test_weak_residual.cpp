#include <doctest.h>

#include <cmath>
#include <random>

#include "awr/weak_residual.hpp"
#include "helpers.hpp"

using namespace awr;

namespace {

WaveSolution corrupt_delta(WaveSolution sol, double dv) {
    std::get<DeltaShockPattern>(sol.pattern).v_delta += dv;
    return sol;
}

// psi centred on the given path at time t0.
TestFunction on_path(const WaveSolution& sol, std::size_t path, double t0, double rx = 0.8,
                     double rt = 0.4) {
    const WaveStructure ws = structure(sol);
    return TestFunction(path_position(ws.speeds0[path], ws.params.beta, t0) + 0.1 * rx, t0, rx,
                        rt);
}

}  // namespace

TEST_CASE("test function") {
    const TestFunction psi(1.0, 2.0, 0.5, 0.25);
    CHECK(psi.value(1.0, 2.0) == 1.0);
    CHECK(psi.value(1.5, 2.0) == 0.0);
    CHECK(psi.value(1.0, 2.3) == 0.0);
    CHECK(psi.dx(1.0, 2.0) == 0.0);
    CHECK(psi.dt(1.0, 2.0) == 0.0);
    const double h = 1e-6;
    for (double x : {0.7, 1.1, 1.4}) {
        for (double t : {1.8, 2.05, 2.2}) {
            const double fdx = (psi.value(x + h, t) - psi.value(x - h, t)) / (2 * h);
            const double fdt = (psi.value(x, t + h) - psi.value(x, t - h)) / (2 * h);
            CHECK(std::abs(psi.dx(x, t) - fdx) <= 1e-7);
            CHECK(std::abs(psi.dt(x, t) - fdt) <= 1e-7);
        }
    }
    CHECK_THROWS_AS(TestFunction(0, 1, 0, 0.5), DomainError);
    CHECK_THROWS_AS(TestFunction(0, 1, 1, -0.5), DomainError);
    CHECK_THROWS_AS(TestFunction(NAN, 1, 1, 0.5), DomainError);
    CHECK_THROWS_AS(TestFunction(0, 1, 1, 0.5, 3), DomainError);
}

TEST_CASE("gauss-legendre rule") {
    for (int n : {1, 2, 5, 24}) {
        const auto rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double sum = 0.0;
        double moment = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += rule.weights[i];
            // x^(2n-2) is integrated exactly: 2 / (2n-1).
            moment += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
        }
        CHECK(std::abs(sum - 2.0) <= 1e-14);
        CHECK(std::abs(moment - 2.0 / (2 * n - 1)) <= 1e-14);
    }
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("constant state") {
    // On J2 with equal densities both contacts separate identical states.
    const auto sol = solve(make_setup(1.5, 2, 1.5, 2, 1, 0.7));
    const auto r = residual(sol, TestFunction(1.0, 1.0, 0.7, 0.5), 20);
    CHECK(std::abs(r.R1) <= 1e-12 * r.scale);
    CHECK(std::abs(r.R2) <= 1e-12 * r.scale);
    CHECK(r.scale > 0.0);
    CHECK(r.quad_level == 20);
}

TEST_CASE("two contacts with psi on J2") {
    const auto sol = solve(make_setup(1, 2, 1, 3, 1, 1.5));
    const auto r = residual(sol, on_path(sol, 1, 1.2), 24);
    CHECK(r.normalized() <= 1e-10);
}

TEST_CASE("delta shock with psi straddling its path") {
    for (double beta : {-2.0, 0.0, 2.0}) {
        const auto sol = solve(make_setup(2, 4, 1, 0, 1, beta));
        const auto r = residual(sol, on_path(sol, 0, 1.0), 24);
        CHECK(r.normalized() <= 1e-8);
    }
}

TEST_CASE("suite on every pattern type") {
    const RiemannSetup cases[] = {
        make_setup(1, 2, 1, 3, 1, 0),     // two contacts
        make_setup(2, 4, 1, 4, 7, 0),     // on J2
        make_setup(2, 4, 1, 0, 1, 0),     // interior delta
        make_setup(2, 4, 1, 3.5, 1, 0),   // boundary S
        make_setup(1, 3, 1, 0, 1, 0),     // equal densities
        make_setup(1, 1, 2, 3, 0, 0),     // vacuum
        make_setup(4, 3, 1, 1, 0, 0),     // transport delta
        make_setup(1, 2, 3, 2, 0, 0),     // single contact
    };
    for (const auto& base : cases) {
        for (double beta : {-2.0, 0.0, 2.0}) {
            RiemannSetup s = base;
            s.params.beta = beta;
            const auto suite = residual_suite(solve(s), 10, 42, 24);
            CHECK(suite.reports.size() == 10);
            CHECK(suite.worst <= 1e-7);
        }
    }
}

TEST_CASE("a disjoint test function sees only roundoff") {
    const auto sol = solve(make_setup(2, 4, 1, 0, 1, 0));
    // Delta path x = 2t; the box stays left of it.
    const auto r = residual(sol, TestFunction(-2.0, 1.0, 0.5, 0.3), 16);
    CHECK(r.normalized() <= 1e-13);
}

TEST_CASE("moving frame residual") {
    for (double beta : {-2.0, 2.0}) {
        const auto sol = solve(make_setup(2, 4, 1, 0, 1, beta));
        ResidualOptions opt;
        opt.frame = Frame::Moving;
        CHECK(residual_suite(sol, 10, 7, 24, opt).worst <= 1e-7);
    }
}

TEST_CASE("corrupted delta speed is detected") {
    for (double beta : {-2.0, 0.0, 2.0}) {
        const auto sol = corrupt_delta(solve(make_setup(2, 4, 1, 0, 1, beta)), 0.1);
        CHECK(residual(sol, on_path(sol, 0, 1.0), 24).normalized() >= 1e-3);
    }
}

TEST_CASE("omitting the delta source term is detected") {
    const auto sol = solve(make_setup(2, 4, 1, 0, 1, 2));
    const auto psi = on_path(sol, 0, 1.0);
    const double intact = residual(sol, psi, 24).normalized();
    ResidualOptions opt;
    opt.delta_source = false;
    const double omitted = residual(sol, psi, 24, opt).normalized();
    CHECK(omitted >= 1e-3);
    CHECK(omitted >= 10 * std::max(intact, kResidualFloor));
}

TEST_CASE("convergence in the quadrature level") {
    const auto sol = solve(make_setup(2, 4, 1, 0, 1, 2));
    const auto psi = on_path(sol, 0, 1.0, 1.2, 0.6);
    const auto rep = convergence_order(sol, psi, {1, 2, 3, 4, 6, 8, 12});
    REQUIRE(rep.residuals.size() == 7);
    // Decreasing until roundoff takes over.
    for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
        if (rep.residuals[i - 1] > 1e-12) {
            CHECK(rep.residuals[i] < rep.residuals[i - 1]);
        }
    }
    CHECK(rep.residuals.back() <= 1e-12);
    CHECK_FALSE(rep.at_floor);
    CHECK(rep.slope < -2.0);

    const auto flat = solve(make_setup(1.5, 2, 1.5, 2, 1, 0));
    const auto at_floor = convergence_order(flat, TestFunction(0, 1, 0.5, 0.5), {8, 12, 16});
    CHECK(at_floor.at_floor);
    CHECK(std::isnan(at_floor.slope));

    // A wrong solution plateaus.
    const auto bad = corrupt_delta(sol, 0.1);
    const auto plateau = convergence_order(bad, psi, {8, 12, 16, 20, 24});
    CHECK(std::abs(plateau.slope) <= 0.1);

    CHECK_THROWS_AS(convergence_order(sol, psi, {8, 12}), DomainError);
}

TEST_CASE("preconditions") {
    const auto sol = solve(make_setup(2, 4, 1, 0, 1, 0));
    CHECK_THROWS_AS(residual(sol, TestFunction(0, 0.5, 1, 0.5), 8), DomainError);
    CHECK_THROWS_AS(residual(sol, TestFunction(0, 0.5, 1, 0.6), 8), DomainError);
    CHECK_THROWS_AS(residual(sol, TestFunction(0, 1, 1, 0.5), 0), DomainError);
    CHECK_THROWS_AS(residual_suite(sol, 0, 1, 8), DomainError);
}

TEST_CASE("test functions are reproducible and lie in t > 0") {
    const auto sol = solve(make_setup(1, 2, 1, 3, 1, -1));
    const auto a = draw_test_functions(sol, 30, 5);
    const auto b = draw_test_functions(sol, 30, 5);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x0() == b[i].x0());
        CHECK(a[i].rt() == b[i].rt());
        CHECK(a[i].t_lo() > 0.0);
    }
    CHECK(draw_test_functions(sol, 30, 6)[0].x0() != a[0].x0());
}
