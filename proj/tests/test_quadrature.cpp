#include <cmath>
#include <limits>

#include "doctest.h"
#include "lpflow/quadrature.hpp"

using namespace lpflow;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("polynomial on a finite interval") {
    const QuadResult q = integrate_adaptive([](double x) { return x * x * x - 2.0 * x; }, -1.0, 2.0, {});
    CHECK(q.value == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("gaussian over the whole line") {
    const QuadResult q = integrate_adaptive([](double x) { return std::exp(-x * x); }, -kInf, kInf, {});
    CHECK(std::abs(q.value - std::sqrt(M_PI)) < 1e-10);
    CHECK(q.err < 1e-9);
}

TEST_CASE("exponential tail on a half line") {
    const QuadResult q = integrate_adaptive([](double x) { return std::exp(-x); }, 3.0, kInf, {});
    CHECK(std::abs(q.value - std::exp(-3.0)) < 1e-11);
}

TEST_CASE("integrable endpoint singularity") {
    const QuadResult q = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {});
    CHECK(std::abs(q.value - 2.0) < 1e-8);
}

TEST_CASE("oscillatory integrand") {
    const QuadResult q =
        integrate_adaptive([](double x) { return std::cos(20.0 * x); }, 0.0, 1.0, {});
    CHECK(q.value == doctest::Approx(std::sin(20.0) / 20.0).epsilon(1e-11));
}

TEST_CASE("degenerate interval") {
    const QuadResult q = integrate_adaptive([](double x) { return x; }, 2.0, 2.0, {});
    CHECK(q.value == 0.0);
}

TEST_CASE("budget exhaustion throws with the best estimate attached") {
    QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 4;
    try {
        integrate_adaptive([](double x) { return std::sin(x * x) + 1.0; }, 0.0, 30.0, spec);
        FAIL("expected QuadConvergenceError");
    } catch (const QuadConvergenceError& e) {
        CHECK(std::isfinite(e.best.value));
        CHECK(e.best.err > 0.0);
    }
}

TEST_CASE("invalid spec rejected") {
    QuadratureSpec spec;
    spec.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, spec),
                    std::domain_error);
}
