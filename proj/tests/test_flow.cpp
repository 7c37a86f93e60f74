#include <cmath>

#include "doctest.h"
#include "lpflow/flow_classifier.hpp"
#include "lpflow/profile.hpp"
#include "lpflow/special.hpp"

using namespace lpflow;

TEST_CASE("threshold table") {
    CHECK(threshold_n(1.0) == 4);
    CHECK(threshold_n(1.2) == 5);
    CHECK(threshold_n(4.0 / 3.0) == 7);
    CHECK(threshold_n(1.5) == 10);
    CHECK(threshold_n(1.75) == 21);
}

TEST_CASE("kurtosis limit R_{p,inf}") {
    CHECK(r_limit(1.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(r_limit(2.0) == doctest::Approx(3.0).epsilon(1e-12));
    // Gamma(5/p) Gamma(1/p) / Gamma(3/p)^2
    const double p = 1.4;
    const double expect =
        std::exp(log_gamma(5.0 / p) + log_gamma(1.0 / p) - 2.0 * log_gamma(3.0 / p));
    CHECK(r_limit(p) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("R increases to its limit in n") {
    const double p = 1.3;
    double prev = 0.0;
    for (int n = 2; n <= 200; ++n) {
        const double r = moment_set(BallParams(p, n)).big_r;
        CHECK(r > prev);
        prev = r;
    }
    CHECK(prev < r_limit(p));
}

TEST_CASE("classification matches the n^2 - n - 8 sign rule for p = 1") {
    for (int n = 2; n <= 50; ++n) {
        const FlowClassification fc = classify(BallParams(1.0, n));
        const bool strict = n * n - n - 8 > 0;
        CHECK((fc.verdict == FlowVerdict::StrictlyDecreasing) == strict);
    }
}

TEST_CASE("nonmonotone cases carry a verified witness pair") {
    for (int n : {2, 3}) {
        const FlowClassification fc = classify(BallParams(1.0, n));
        REQUIRE(fc.has_witness);
        CHECK(fc.dphi_neg < 0.0);
        CHECK(fc.dphi_pos > 0.0);
        CHECK(fc.t_neg < fc.t_pos);
    }
}

TEST_CASE("signed-measure identities") {
    for (const auto& [p, n] : std::initializer_list<std::pair<double, int>>{
             {1.0, 3}, {1.0, 5}, {1.5, 4}}) {
        const BallParams params(p, n);
        const SignedMeasureCheck sm = s_positivity(params, {0.5, 2.0}, {});
        CHECK(std::abs(sm.s_at_zero) < 1e-8);
        CHECK(std::abs(sm.sprime_at_zero - moment_set(params).delta) < 1e-8);
        CHECK(sm.mu_sign_changes == 2);
    }
}

TEST_CASE("S stays positive when delta is nonnegative") {
    for (int n : {4, 10}) {
        const SignedMeasureCheck sm =
            s_positivity(BallParams(1.0, n), {0.01, 0.1, 1.0, 10.0, 100.0}, {});
        for (double s : sm.s_values) CHECK(s > 0.0);
    }
}

TEST_CASE("bracket factor minimizer") {
    // the stationarity equation gives argmin^{p/2} = 1 - p/2
    const double p = 1.4;
    const double w = bracket_min_check(p);
    CHECK(w == doctest::Approx(std::pow(1.0 - p / 2.0, 2.0 / p)).epsilon(1e-6));
}

TEST_CASE("phi derivative witnesses match the sign of the profile differences") {
    const BallParams params(1.0, 3);
    const double t = 0.01;
    const double d = phi_derivative(params, t, {});
    const double fd = (coordinate_profile_phi(params, t * 1.01).value -
                       coordinate_profile_phi(params, t * 0.99).value) /
                      (0.02 * t);
    CHECK(d == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(classify(BallParams(2.0, 3)), std::domain_error);
    CHECK_THROWS_AS(s_positivity(BallParams(1.5, 3), {0.0}, {}), std::domain_error);
}
