#include <cmath>
#include <numbers>

#include "cmldde/errors.hpp"
#include "cmldde/model.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cmldde;
using cmldde::testing::p3_params;

TEST_CASE("gamma_of") {
    CHECK(gamma_of(1.0, 1.0) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    // ln(2/1.01)/7.55
    CHECK(gamma_of(1.01, 7.55) == doctest::Approx(0.09048964896778507).epsilon(1e-13));
    CHECK(gamma_of(2.0, 3.0) == 0.0);

    CHECK_THROWS_AS(gamma_of(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_of(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_of(2.0000001, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_of(1.5, 0.0), DomainError);
}

TEST_CASE("ModelParams validates eagerly and derives gamma") {
    const ModelParams p = p3_params();
    CHECK(2.0 * std::exp(-p.gamma() * p.r()) == doctest::Approx(p.k()).epsilon(1e-15));
    CHECK(p.with_delay(3.0).gamma() == doctest::Approx(std::log(2.0 / 1.01) / 3.0));

    CHECK_THROWS_AS(ModelParams(ParamValues{0.0, 1, 1, 1.5, 1}), DomainError);
    CHECK_THROWS_AS(ModelParams(ParamValues{2, -1, 1, 1.5, 1}), DomainError);
    CHECK_THROWS_AS(ModelParams(ParamValues{2, 1, 0, 1.5, 1}), DomainError);
    CHECK_THROWS_AS(ModelParams(ParamValues{2, 1, 1, 2.5, 1}), DomainError);
    CHECK_THROWS_AS(ModelParams(ParamValues{2, 1, 1, 1.5, -1}), DomainError);
    CHECK_THROWS_AS(ModelParams(ParamValues{2, 1, NAN, 1.5, 1}), DomainError);
    CHECK(ModelParams(ParamValues{2, 1, 1, 2.0, 1}).gamma() == 0.0);
}

TEST_CASE("feedback") {
    CHECK(feedback(0.0, 2.5, 2.0) == 0.0);
    for (double n : {0.5, 1.0, 2.0, 7.3, 12.0}) {
        CHECK(feedback(1.0, 1.77, n) == doctest::Approx(1.77 / 2.0).epsilon(1e-15));
    }
    CHECK(feedback(3.95811, 2.5, 2.0) == doctest::Approx(0.593716).epsilon(1e-5));
    CHECK_THROWS_AS(feedback(-1e-3, 1.0, 2.0), DomainError);

    // Non-integer exponents go through exp(n ln y); integer ones through pow.
    CHECK(hill_power(2.0, 2.5) == doctest::Approx(std::pow(2.0, 2.5)).epsilon(1e-14));
    CHECK(hill_power(0.0, 2.5) == 0.0);
}

TEST_CASE("right-hand sides") {
    const ModelParams p = p3_params();
    const Equilibrium e = *positive_equilibrium(p);

    CHECK(std::abs(rhs_y(e.y_star, e.y_star, p)) < 1e-12);
    CHECK(rhs_y(0.0, 0.0, p) == 0.0);
    CHECK(rhs_y(0.0, 1.0, p) == doctest::Approx(1.01 * 2.5 / 2.0).epsilon(1e-15));

    CHECK(std::abs(rhs_x(e.x_star, e.y_star, e.y_star, p)) < 1e-12);
    CHECK(rhs_x(0.0, 0.0, 0.0, p) == 0.0);
    const double forcing = (1.0 - p.k() / 2.0) * feedback(e.y_star, p.beta0(), p.n());
    CHECK(rhs_x(0.0, e.y_star, e.y_star, p) == doctest::Approx(forcing).epsilon(1e-14));
    CHECK(rhs_x(0.0, e.y_star, e.y_star, p) == doctest::Approx(p.gamma() * e.x_star).epsilon(1e-12));
    CHECK(rhs_x(0.0, e.y_star, e.y_star, p) == doctest::Approx(0.293889).epsilon(1e-5));
}

TEST_CASE("equilibria") {
    SUBCASE("published positive equilibrium") {
        const auto eqs = equilibria(p3_params());
        REQUIRE(eqs.size() == 2);
        CHECK(eqs[0].kind == EquilibriumKind::Trivial);
        CHECK(eqs[0].x_star == 0.0);
        CHECK(eqs[0].y_star == 0.0);
        CHECK(eqs[1].kind == EquilibriumKind::Positive);
        CHECK(eqs[1].y_star == doctest::Approx(3.95811).epsilon(1e-5));
        CHECK(eqs[1].x_star == doctest::Approx(3.24777).epsilon(1e-5));
    }
    SUBCASE("ratio exactly one collapses onto the trivial equilibrium") {
        // beta0 (k-1)/delta = 2 * 0.5 / 1 = 1
        const auto eqs = equilibria(ModelParams(ParamValues{2, 2.0, 1.0, 1.5, 1.0}));
        REQUIRE(eqs.size() == 1);
        CHECK(eqs[0].kind == EquilibriumKind::Trivial);
    }
    SUBCASE("ratio below one") {
        const auto eqs = equilibria(ModelParams(ParamValues{2, 1.0, 1.0, 1.5, 1.0}));
        CHECK(eqs.size() == 1);
    }
    SUBCASE("k = 1 has no positive equilibrium") {
        CHECK(equilibria(ModelParams(ParamValues{2, 2.5, 0.0015, 1.0, 7.55})).size() == 1);
    }
    SUBCASE("k = 2 is degenerate when the positive branch exists") {
        CHECK_THROWS_AS(equilibria(ModelParams(ParamValues{2, 2.5, 0.0015, 2.0, 7.55})),
                        DomainError);
    }
}

TEST_CASE("b1_coefficient") {
    SUBCASE("bracket vanishes at ratio n/(n-1)") {
        // n = 3: ratio 1.5 = beta0 (k-1) / delta with beta0 = 1.5, k = 1.5, delta = 0.5
        const LinearizationData d = b1_coefficient(ModelParams(ParamValues{3, 1.5, 0.5, 1.5, 1}));
        CHECK(std::abs(d.b1) < 1e-15);
        CHECK(d.sum_db1 == doctest::Approx(0.5));
    }
    SUBCASE("P3") {
        const LinearizationData d = b1_coefficient(p3_params());
        CHECK(d.b1 == doctest::Approx(-0.132).epsilon(1e-12));
        CHECK(d.sum_db1 == doctest::Approx(-0.1305).epsilon(1e-12));
        CHECK(d.k_b1 == doctest::Approx(1.01 * -0.132).epsilon(1e-12));
    }
    SUBCASE("steep feedback") {
        const LinearizationData d = b1_coefficient(12, 1.77, 0.05, 1.18074);
        // 0.05/0.18074 * (0.6/(1.77*0.18074) - 11)
        CHECK(d.b1 == doctest::Approx(-2.5241981120).epsilon(1e-9));
    }
    SUBCASE("no positive equilibrium") {
        CHECK_THROWS_AS(b1_coefficient(ModelParams(ParamValues{2, 1.0, 1.0, 1.5, 1.0})),
                        PreconditionError);
    }
}

TEST_CASE("properties over random parameter sets") {
    cmldde::testing::ParamSampler sampler(0x5eed);
    for (int trial = 0; trial < 500; ++trial) {
        const ModelParams p(sampler.positive());
        CAPTURE(p.n());
        CAPTURE(p.beta0());
        CAPTURE(p.delta());
        CAPTURE(p.k());
        const Equilibrium e = *positive_equilibrium(p);
        const double y2 = e.y_star;

        // B1 against a centred difference of the flux.
        const double h = 1e-6 * (1.0 + y2);
        const double fd = (feedback(y2 + h, p.beta0(), p.n()) - feedback(y2 - h, p.beta0(), p.n())) /
                          (2.0 * h);
        const double b1 = b1_coefficient(p).b1;
        CHECK(std::abs(b1 - fd) <= 1e-8 * std::max(std::abs(fd), 1e-3 * p.delta()));

        CHECK(std::abs(rhs_y(y2, y2, p)) < 1e-12);
        CHECK(std::abs(rhs_x(e.x_star, y2, y2, p)) < 1e-12);

        const double lhs = (p.beta0() / (1.0 + hill_power(y2, p.n())) + p.delta()) * y2;
        CHECK(lhs == doctest::Approx(p.k() * feedback(y2, p.beta0(), p.n())).epsilon(1e-12));

        CHECK(2.0 * std::exp(-gamma_of(p.k(), p.r()) * p.r()) ==
              doctest::Approx(p.k()).epsilon(1e-14));
    }
}
