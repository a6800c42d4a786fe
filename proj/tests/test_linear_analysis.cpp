#include <cmath>
#include <complex>
#include <numbers>

#include "cmldde/errors.hpp"
#include "cmldde/hopf.hpp"
#include "cmldde/linear_analysis.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cmldde;
using cmldde::testing::hopf_point_params;
using cmldde::testing::p3_params;

TEST_CASE("trivial equilibrium") {
    const auto at_ratio = [](double ratio) {
        // beta0 (k-1)/delta with beta0 = 1, k = 1.5
        return classify_trivial(ModelParams(ParamValues{2, 1.0, 0.5 / ratio, 1.5, 1.0}));
    };
    CHECK(at_ratio(0.5).state == Stability::AsymptoticallyStable);
    CHECK(at_ratio(0.5).source == VerdictSource::P2_1);
    CHECK(at_ratio(1.0).state == Stability::MarginallyStable);
    CHECK(at_ratio(1.0).source == VerdictSource::P2_2);
    CHECK(at_ratio(2.0).state == Stability::Unstable);
    CHECK(at_ratio(2.0).source == VerdictSource::P2_3);
    CHECK(to_string(VerdictSource::P2_3) == "P2.3");
}

TEST_CASE("omega0") {
    CHECK(omega0(0.0, 2.0) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
    CHECK(omega0(0.0, 1.0) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));

    // Large positive delta + B1 pushes the root towards pi/r.
    const double r = 1.5;
    double previous = omega0(0.0, r);
    for (double s : {1.0, 10.0, 100.0, 1e4}) {
        const double w = omega0(s, r);
        CHECK(w > previous);
        CHECK(w < std::numbers::pi / r);
        previous = w;
    }
    CHECK(std::numbers::pi / r - previous < 1e-3);

    // Below -1/r the function keeps one sign on (0, pi/r).
    CHECK_THROWS_AS(omega0(-1.0 / r - 0.1, r), NotFound);

    const double w = omega0(p3_params());
    CHECK(w == doctest::Approx(0.027797258427581326).epsilon(1e-12));
    CHECK(std::abs(w * std::cos(w * 7.55) - 0.1305 * std::sin(w * 7.55)) < 1e-12);
}

TEST_CASE("positive equilibrium verdicts") {
    SUBCASE("P3 lies inside the delay window") {
        const StabilityVerdict v = classify_positive(p3_params());
        CHECK(v.state == Stability::AsymptoticallyStable);
        CHECK(v.source == VerdictSource::P2_4);
        REQUIRE(v.r_lower);
        REQUIRE(v.r_upper);
        CHECK(*v.r_lower == doctest::Approx(7.41239).epsilon(1e-5));
        CHECK(*v.r_upper == doctest::Approx(1.0 / 0.1305).epsilon(1e-12));
    }
    SUBCASE("beyond the Hopf delay") {
        const StabilityVerdict v = classify_positive(p3_params().with_delay(7.6));
        CHECK(v.state == Stability::Unstable);
        CHECK(v.source == VerdictSource::HopfExceeded);
        REQUIRE(v.r_hopf);
        CHECK(*v.r_hopf == doctest::Approx(7.5540872).epsilon(1e-7));
    }
    SUBCASE("steep feedback on either side of the Hopf delay") {
        CHECK(classify_positive(hopf_point_params(0.3558)).source == VerdictSource::P2_4);
        CHECK(classify_positive(hopf_point_params(0.36)).source == VerdictSource::HopfExceeded);
        for (double r : {0.1, 0.2, 0.3}) {
            CHECK(classify_positive(hopf_point_params(r)).state == Stability::AsymptoticallyStable);
        }
    }
    SUBCASE("dominant undelayed decay") {
        // B1 = -0.0192, delta + B1 = 0.2208 > |k B1|
        const StabilityVerdict v = classify_positive(ModelParams(ParamValues{2, 1, 0.24, 1.5, 3}));
        CHECK(v.state == Stability::AsymptoticallyStable);
        CHECK(v.source == VerdictSource::P2_5);
    }
    SUBCASE("positive B1") {
        const StabilityVerdict v = classify_positive(ModelParams(ParamValues{2, 1, 0.3, 1.5, 3}));
        CHECK(v.state == Stability::AsymptoticallyStable);
        CHECK(v.source == VerdictSource::P2_6);
    }
    SUBCASE("B1 = 0 is not covered by any sufficient condition") {
        const ModelParams p(ParamValues{2, 1, 0.25, 1.5, 3});
        CHECK(classify_positive(p).state == Stability::Undetermined);
        const RootSearch roots = leading_roots(p, 3);
        REQUIRE(roots.roots.size() == 1);
        CHECK(roots.partial);
        CHECK(roots.roots[0].re == doctest::Approx(-0.25).epsilon(1e-12));
        CHECK(std::abs(roots.roots[0].im) < 1e-12);
    }
    SUBCASE("no positive equilibrium") {
        CHECK_THROWS_AS(classify_positive(ModelParams(ParamValues{2, 1, 1, 1.5, 1})),
                        PreconditionError);
    }
}

TEST_CASE("characteristic roots") {
    SUBCASE("P3 leading pair") {
        const RootSearch rs = leading_roots(p3_params(), 3);
        REQUIRE(rs.roots.size() == 3);
        CHECK_FALSE(rs.partial);
        CHECK(rs.roots[0].re == doctest::Approx(-7.133795449260072e-05).epsilon(1e-8));
        CHECK(rs.roots[0].im == doctest::Approx(0.02728561651276324).epsilon(1e-10));
        CHECK(rs.roots[1].re == doctest::Approx(-0.275703580864).epsilon(1e-9));
        CHECK(rs.roots[1].im == doctest::Approx(0.988627060869).epsilon(1e-9));
        CHECK(rs.roots[2].re == doctest::Approx(-0.351952449463).epsilon(1e-9));
        CHECK(rs.roots[2].im == doctest::Approx(1.83848137589).epsilon(1e-9));
        const LinearizationData lin = b1_coefficient(p3_params());
        for (const auto& z : rs.roots) {
            CHECK(characteristic_residual({z.re, z.im}, lin, 7.55) < kRootResidualTolerance);
        }
    }
    SUBCASE("imaginary pair at the Hopf delay") {
        for (double k : {1.3, 1.5, 1.8}) {
            const HopfPoint hp = hopf_point(2, 1.0, k, 0.05);
            const RootSearch rs = leading_roots(hp.params, 1);
            REQUIRE_FALSE(rs.roots.empty());
            CHECK(std::abs(rs.roots[0].re) < 1e-9);
            CHECK(rs.roots[0].im == doctest::Approx(hp.omega_h).epsilon(1e-9));
        }
    }
    SUBCASE("count must be positive") {
        CHECK_THROWS_AS(leading_roots(p3_params(), 0), DomainError);
    }
}

TEST_CASE("sufficient conditions agree with the spectrum") {
    cmldde::testing::ParamSampler sampler(20260315);
    int decided = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const ModelParams p(sampler.positive(0.1, 20.0));
        const StabilityVerdict v = classify_positive(p);
        if (v.state == Stability::Undetermined) continue;
        ++decided;
        const double mu = spectral_abscissa(p);
        CAPTURE(p.n());
        CAPTURE(p.beta0());
        CAPTURE(p.delta());
        CAPTURE(p.k());
        CAPTURE(p.r());
        CAPTURE(to_string(v.source));
        CAPTURE(mu);
        if (v.state == Stability::AsymptoticallyStable) CHECK(mu < 1e-9);
        if (v.state == Stability::Unstable) CHECK(mu > -1e-9);
    }
    CHECK(decided >= 200);
}

TEST_CASE("time rescaling maps the spectrum") {
    // (beta0, delta, r) -> (a beta0, a delta, r / a) multiplies every root by a.
    cmldde::testing::ParamSampler sampler(77);
    for (int trial = 0; trial < 30; ++trial) {
        ParamValues v = sampler.positive(0.5, 10.0);
        const double a = sampler.uniform(0.5, 3.0);
        ParamValues w = v;
        w.beta0 *= a;
        w.delta *= a;
        w.r /= a;
        const RootSearch base = leading_roots(ModelParams(v), 1);
        const RootSearch scaled = leading_roots(ModelParams(w), 1);
        REQUIRE_FALSE(base.roots.empty());
        REQUIRE_FALSE(scaled.roots.empty());
        const double tol = 1e-7 * (1.0 + std::abs(a * base.roots[0].im));
        CHECK(std::abs(scaled.roots[0].re - a * base.roots[0].re) < tol);
        CHECK(std::abs(scaled.roots[0].im - a * base.roots[0].im) < tol);
        CHECK(classify_positive(ModelParams(v)).state == classify_positive(ModelParams(w)).state);
    }
}
