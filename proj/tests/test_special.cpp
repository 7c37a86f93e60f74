#include <cmath>

#include "doctest.h"
#include "lpflow/special.hpp"

using namespace lpflow;

TEST_CASE("log_gamma matches known values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("log_gamma satisfies the recurrence on a grid") {
    for (double x : {0.3, 0.7, 1.5, 10.0, 100.0}) {
        const double lhs = log_gamma(x + 1.0);
        const double rhs = log_gamma(x) + std::log(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma domain") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("gamma_ratio") {
    CHECK(gamma_ratio(5.0, 3.0) == doctest::Approx(12.0).epsilon(1e-13));
    CHECK(gamma_ratio(3.0, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gaussian absolute moments") {
    CHECK(gaussian_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gaussian_abs_moment(1.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-13));
    CHECK(gaussian_abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("log_binomial") {
    CHECK(log_binomial(6, 3) == doctest::Approx(std::log(20.0)).epsilon(1e-13));
    CHECK(log_binomial(10, 0) == doctest::Approx(0.0).epsilon(1e-14));
}
