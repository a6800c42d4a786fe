#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "cmldde/dde_sim.hpp"
#include "cmldde/errors.hpp"
#include "cmldde/x_solver.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cmldde;
using cmldde::testing::hopf_point_params;
using cmldde::testing::p3_params;

namespace {

/// Samples fn on the grid {i * step} covering [t0, t1]; t0 must be a multiple of step.
Trajectory sampled(double step, double t0, double t1, const std::function<double(double)>& fn,
                   const std::function<double(double)>& dfn) {
    const auto origin = static_cast<std::size_t>(std::llround(-t0 / step));
    const auto last = static_cast<std::size_t>(std::ceil(t1 / step - 1e-9));
    std::vector<double> v;
    std::vector<double> d;
    for (std::size_t i = 0; i <= origin + last; ++i) {
        const double t = (static_cast<double>(i) - static_cast<double>(origin)) * step;
        v.push_back(fn(t));
        d.push_back(dfn(t));
    }
    return Trajectory(step, origin, std::move(v), std::move(d));
}

Trajectory constant_y(const ModelParams& p, double value, double t1) {
    const double step = p.r() / 16.0;
    return sampled(
        step, -p.r(), t1, [=](double) { return value; }, [](double) { return 0.0; });
}

}  // namespace

TEST_CASE("equilibrium and closed form") {
    const ModelParams p = p3_params();
    const Equilibrium e = *positive_equilibrium(p);
    const Trajectory y = constant_y(p, e.y_star, 600.0);

    const Trajectory at_rest = integrate_x(p, y, e.x_star, 600.0);
    CHECK(at_rest.t_begin() == 0.0);
    for (double v : at_rest.values()) CHECK(std::abs(v - e.x_star) < 1e-9);

    for (double x0 : {0.0, 1.0, 10.0}) {
        const Trajectory x = integrate_x(p, y, x0, 600.0);
        for (std::size_t i = 0; i < x.size(); i += 7) {
            const double t = x.time(i);
            const double exact = e.x_star + (x0 - e.x_star) * std::exp(-p.gamma() * t);
            CHECK(x.value(i) == doctest::Approx(exact).epsilon(1e-8));
            CHECK(x.slope(i) == doctest::Approx(-p.gamma() * (x0 - e.x_star) *
                                                std::exp(-p.gamma() * t))
                                    .epsilon(1e-6)
                                    .scale(1e-9));
        }
    }
}

TEST_CASE("contraction identity") {
    const ModelParams p = p3_params();
    const Trajectory y = integrate_y(p, eigenmode_history(p, 0.55), 3000.0);
    const Trajectory a = integrate_x(p, y, 3.0, 3000.0);
    const Trajectory b = integrate_x(p, y, 0.5, 3000.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i += 13) {
        const double expected = 2.5 * std::exp(-p.gamma() * a.time(i));
        // plus the rounding floor of subtracting two O(1) values
        const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(a.value(i)), std::abs(b.value(i)));
        CHECK(std::abs(a.value(i) - b.value(i) - expected) <= 1e-10 * expected + floor);
    }
}

TEST_CASE("periodic_offset") {
    const double gamma = 0.3;
    const double period = 5.0;
    const double omega = 2.0 * std::numbers::pi / period;
    const std::size_t n = 4097;
    std::vector<double> c(n);
    std::vector<double> s(n);
    std::vector<double> zero(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = period * static_cast<double>(i) / static_cast<double>(n - 1);
        c[i] = std::cos(omega * t);
        s[i] = std::sin(omega * t);
    }
    // u' = -gamma u + H has the periodic solution
    //   cos forcing: (gamma cos + omega sin) / (gamma^2 + omega^2)
    //   sin forcing: (gamma sin - omega cos) / (gamma^2 + omega^2)
    const double denom = gamma * gamma + omega * omega;
    CHECK(periodic_offset(gamma, period, c).u0 == doctest::Approx(gamma / denom).epsilon(1e-8));
    CHECK(periodic_offset(gamma, period, s).u0 == doctest::Approx(-omega / denom).epsilon(1e-8));
    CHECK(periodic_offset(gamma, period, zero).u0 == 0.0);
    CHECK(periodic_offset(gamma, period, zero).condition ==
          doctest::Approx(1.0 / (1.0 - std::exp(-gamma * period))));

    CHECK_THROWS_AS(periodic_offset(gamma, period, std::vector<double>(4, 0.0)), DomainError);
    CHECK_THROWS_AS(periodic_offset(gamma, period, std::vector<double>(1, 0.0)), DomainError);
    CHECK_THROWS_AS(periodic_offset(gamma, 0.0, c), DomainError);
    CHECK_THROWS_AS(periodic_offset(1e-15, 1.0, c), NumericalError);
}

TEST_CASE("periodic start on a synthetic cycle") {
    const ModelParams p = hopf_point_params(0.36);
    const Equilibrium e = *positive_equilibrium(p);
    // T = 3 r / 4, so the node grid (step r/64) divides it exactly.
    const double period = 0.75 * p.r();
    const double w = 2.0 * std::numbers::pi / period;
    const double y2 = e.y_star;
    const Trajectory y = sampled(
        p.r() / 64.0, -p.r(), 10.0 * period,
        [=](double t) { return y2 + 0.2 * std::sin(w * t) + 0.05 * std::cos(2.0 * w * t); },
        [=](double t) { return 0.2 * w * std::cos(w * t) - 0.1 * w * std::sin(2.0 * w * t); });

    SUBCASE("H = 0 gives x2") {
        const Trajectory flat = constant_y(p, y2, 10.0);
        const PeriodicStart ps = periodic_x0(p, flat, 1.0, 2.0);
        CHECK(ps.x0 == doctest::Approx(e.x_star).epsilon(1e-12));
    }
    SUBCASE("x returns to its start") {
        const PeriodicStart ps = periodic_x0(p, y, 0.0, period);
        CHECK(ps.mismatch < 1e-12);
        CHECK(ps.condition > 1.0);
        const Trajectory x = integrate_x(p, y, ps.x0, 2.0 * period, 4);
        CHECK(std::abs(x.eval(period) - ps.x0) < 1e-7);
        CHECK(std::abs(x.eval(2.0 * period) - ps.x0) < 1e-7);
    }
    SUBCASE("a slice that is not a period is rejected") {
        CHECK_THROWS_AS(periodic_x0(p, y, 0.0, 0.7 * period), PreconditionError);
    }
    SUBCASE("forcing trace is centred on the equilibrium forcing") {
        const ForcingTrace trace = forcing_trace(p, constant_y(p, y2, 5.0), y2, 0.0, 5.0, 11);
        CHECK(trace.h.size() == 11);
        CHECK(trace.step == doctest::Approx(0.5));
        for (double h : trace.h) CHECK(std::abs(h) < 1e-15);
    }
}

TEST_CASE("Simpson order in the quadrature step") {
    const ModelParams p = hopf_point_params(0.36);
    const Equilibrium e = *positive_equilibrium(p);
    const double y2 = e.y_star;
    const Trajectory y = sampled(
        p.r() / 4.0, -p.r(), 20.0, [=](double t) { return y2 * (1.0 + 0.3 * std::sin(3.0 * t)); },
        [=](double t) { return 0.9 * y2 * std::cos(3.0 * t); });
    const Trajectory ref = integrate_x(p, y, 0.2, 20.0, 64);
    const Trajectory one = integrate_x(p, y, 0.2, 20.0, 1);
    const Trajectory two = integrate_x(p, y, 0.2, 20.0, 2);
    double e1 = 0.0;
    double e2 = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        e1 = std::max(e1, std::abs(one.value(i) - ref.value(i)));
        e2 = std::max(e2, std::abs(two.value(i) - ref.value(i)));
    }
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e1 > 0.0);
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("convergence transfers from y to x") {
    for (double r : {0.2, 0.3}) {
        const ModelParams p = hopf_point_params(r);
        const Equilibrium e = *positive_equilibrium(p);
        const Trajectory y =
            integrate_y(p, HistoryFunction(ConstantHistory{1.05 * e.y_star}, r), 30.0);
        const Trajectory x = integrate_x(p, y, 0.3 * e.x_star, 30.0);
        const ConvergenceReport ry = convergence_check(y, e.y_star, 10.0);
        const ConvergenceReport rx = convergence_check(x, e.x_star, 10.0);
        const double gain = 2.0 * p.beta0() / p.gamma() * (1.0 + p.k() / 2.0);
        CAPTURE(ry.sup_distance);
        CAPTURE(rx.sup_distance);
        CHECK(ry.sup_distance < 1e-3);
        CHECK(ry.decaying);
        CHECK(rx.sup_distance < ry.sup_distance * gain + 1e-9);
        CHECK(rx.decaying);
    }
}

TEST_CASE("convergence_check") {
    const double gamma = 0.4;
    const Trajectory x = sampled(
        0.01, 0.0, 20.0 / gamma, [=](double t) { return 2.0 + std::exp(-gamma * t); },
        [=](double t) { return -gamma * std::exp(-gamma * t); });
    const ConvergenceReport r = convergence_check(x, 2.0, 10.0 / gamma);
    CHECK(r.sup_distance < std::exp(-10.0));
    CHECK(r.previous_sup == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.decaying);

    const ConvergenceReport periodic = convergence_check(
        x, [](double t) { return 2.0 + 0.0 * t; }, 10.0 / gamma);
    CHECK(periodic.sup_distance == doctest::Approx(r.sup_distance));

    CHECK_THROWS_AS(convergence_check(x, 2.0, 30.0 / gamma), DomainError);
}

TEST_CASE("integrate_x input errors") {
    const ModelParams p = p3_params();
    const Trajectory y = constant_y(p, 1.0, 50.0);
    CHECK_THROWS_AS(integrate_x(p, y, 1.0, 100.0), DomainError);
    CHECK_THROWS_AS(integrate_x(p, y, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(integrate_x(p, y, NAN, 10.0), DomainError);
    CHECK_THROWS_AS(integrate_x(p, y, 1.0, 10.0, 0), DomainError);
    const Trajectory short_history = sampled(
        p.r() / 16.0, -p.r() / 2.0, 50.0, [](double) { return 1.0; }, [](double) { return 0.0; });
    CHECK_THROWS_AS(integrate_x(p, short_history, 1.0, 10.0), DomainError);
}
