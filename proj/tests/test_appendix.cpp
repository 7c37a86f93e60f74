#include <cmath>

#include "doctest.h"
#include "lpflow/appendix.hpp"

using namespace lpflow;

TEST_CASE("rational polynomial arithmetic is exact") {
    const RationalPoly a({Rational(1), Rational(2)});        // 1 + 2s
    const RationalPoly b({Rational(-1), Rational(0), Rational(3)});  // -1 + 3s^2
    const RationalPoly prod = a * b;
    CHECK(prod.c == std::vector<Rational>{-1, -2, 3, 6});
    CHECK((prod / a) == b);
    CHECK_THROWS_AS(prod / RationalPoly({Rational(0), Rational(1)}), std::domain_error);
    CHECK(prod.eval(Rational(2)) == Rational(5) * Rational(11));
}

TEST_CASE("bernstein transform of simple polynomials") {
    // s on [0,1] at degree 2: b = (0, 1/2, 1)
    const std::vector<Rational> b = bernstein_coeffs(RationalPoly({0, 1}), 2);
    CHECK(b == std::vector<Rational>{0, {1, 2}, 1});
    // constants are fixed points
    CHECK(bernstein_coeffs(RationalPoly({Rational(7)}), 3) ==
          std::vector<Rational>{7, 7, 7, 7});
}

TEST_CASE("polynomial inequality certificate") {
    const PolyIneqReport rep = verify_poly_inequality(5000, RngStream{3, 0});
    CHECK(rep.bernstein_lists_match);
    CHECK(rep.boundary_identity);
    CHECK(rep.negatives == 0);
    CHECK(rep.min_value >= 0.0);
    CHECK(rep.samples == 5000);
}

TEST_CASE("beta trapezoid bound") {
    CHECK(beta_trapezoid_check(0.7, 2.5, 0.1, 0.8).holds);
    CHECK(beta_trapezoid_check(0.6, 1.8, 0.0, 1.0).holds);
    CHECK(beta_trapezoid_check(0.9, 2.7, 0.4, 0.4).holds);  // degenerate
    CHECK_THROWS_AS(beta_trapezoid_check(0.7, 1.0, 0.1, 0.8), std::domain_error);
}

TEST_CASE("two-interval comparison") {
    RngEngine rng(RngStream{8, 0});
    for (int i = 0; i < 200; ++i) {
        const double ell = 2.0 * rng.next_double();
        const double b = rng.next_double();
        const double y = rng.next_double();
        const double x = y * rng.next_double();
        CHECK(two_interval_check(ell, b, x, y).holds);
    }
}

TEST_CASE("layer roots respect the taxonomy") {
    LayerScenario sc;
    sc.alpha = 0.7;
    sc.exponent = 2.3;
    sc.coefficient = 1.4;
    sc.level = 0.9;  // L < 1 < B: central component
    sc = layer_roots(sc);
    REQUIRE(sc.active.size() == 1);
    CHECK(sc.kinds[0] == ComponentKind::Central);
    CHECK(sc.roots.size() == 2);

    sc.level = 1.2;  // B > L > 1: H-branch cap possible only above H(1) = 1
    sc = layer_roots(sc);
    for (const auto& comp : sc.active) CHECK(comp.first < comp.second);
}

TEST_CASE("weighted centered layer inequality on random scenarios") {
    RngEngine rng(RngStream{9, 0});
    for (int i = 0; i < 60; ++i) {
        LayerScenario sc;
        sc.alpha = 0.55 + 0.4 * rng.next_double();
        sc.exponent = 3.0 * sc.alpha + 2.5 * rng.next_double();
        sc.coefficient = 0.2 + 2.5 * rng.next_double();
        sc.level = 0.15 + 1.6 * rng.next_double();
        sc = layer_roots(sc);
        if (sc.tangency) {
            sc.level *= 1.0 + 1e-8;
            sc = layer_roots(sc);
        }
        const CheckReport rep = wcl_check(sc);
        CHECK(rep.holds);
    }
}

TEST_CASE("tangent levels are evaluated on both sides") {
    LayerScenario sc;
    sc.alpha = 0.75;
    sc.exponent = 2.5;
    sc.coefficient = 0.8;
    sc.level = 0.8;  // equals H(0) = B: flagged endpoint tangency
    sc = layer_roots(sc);
    CHECK(sc.tangency);
    for (double eps : {-1e-7, 1e-7}) {
        LayerScenario pert = sc;
        pert.level = 0.8 * (1.0 + eps);
        pert.roots.clear();
        pert = layer_roots(pert);
        CHECK(wcl_check(pert).holds);
    }
}

TEST_CASE("dual layer inequality and route consistency") {
    RngEngine rng(RngStream{10, 0});
    for (int i = 0; i < 30; ++i) {
        const double alpha = 0.55 + 0.4 * rng.next_double();
        const double beta = 1.0 + 2.0 * alpha + 2.0 * rng.next_double();
        const double a_coef = 0.3 + 2.0 * rng.next_double();
        const double x_level = 0.2 + 1.2 * rng.next_double();
        const DltReport rep = dlt_check(alpha, beta, a_coef, x_level);
        CHECK(rep.holds);
        CHECK(rep.route_gap < 1e-9 * std::max(1.0, rep.lhs));
    }
    // A > 1 forces a nontrivial active set (L = 1/A < 1)
    const DltReport nontrivial = dlt_check(0.7, 2.6, 1.6, 0.9);
    CHECK(nontrivial.holds);
    CHECK(nontrivial.rhs > 0.0);
}

TEST_CASE("second-derivative identity on a smooth quadratic layer") {
    QuadraticLayerCase tc;
    tc.L = [](double r) { return 1.0 + 0.3 * std::sin(r); };
    tc.Lp = [](double r) { return 0.3 * std::cos(r); };
    tc.D = [](double r) { return 0.5 * r; };
    tc.Dp = [](double) { return 0.5; };
    tc.W = [](double r) { return 1.0 + r * r; };
    tc.r_lo = 0.0;
    tc.r_hi = 2.0;
    for (double x : {0.6, 0.8, 1.1}) {
        const SecondDerivReport rep = second_derivative_identity_check(tc, x);
        CHECK(rep.holds);
        CHECK(rep.gap < 1e-5);
    }
}

TEST_CASE("append lemma preserves the stop-loss order") {
    const DiscreteLaw y1{{0.5, -0.5}, {0.5, 0.5}};
    const DiscreteLaw y2{{0.8, -0.8, 0.1, -0.1},
                         {0.19047619047619047, 0.19047619047619047, 0.30952380952380953,
                          0.30952380952380953}};
    const AppendReport rep = append_lemma_check(0.7, 2.5, 0.6, y1, y2);
    CHECK(rep.holds);
    CHECK(rep.moment_shift_gap < 1e-10);
    // refuse laws that are not convex-ordered in squares
    CHECK_THROWS_AS(append_lemma_check(0.7, 2.5, 0.6, y2, y1), std::domain_error);
}

TEST_CASE("base case: monotone with a consistent boundary identity") {
    const BaseCaseReport rep = base_case_check(1.5, {0.05, 0.25, 0.45, 0.65, 0.78}, 0.6);
    CHECK(rep.monotone);
    CHECK(rep.boundary_nonnegative);
    CHECK(rep.consistent);
    CHECK(rep.max_fd_gap < 1e-6);
    CHECK_THROWS_AS(base_case_check(2.5, {0.1}, 0.6), std::domain_error);
}
