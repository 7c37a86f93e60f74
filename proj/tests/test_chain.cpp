#include <cmath>

#include "doctest.h"
#include "lpflow/chain.hpp"
#include "lpflow/special.hpp"

using namespace lpflow;

TEST_CASE("characteristic function closed forms") {
    CHECK(char_fn_phi(1.0, 3.0) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(char_fn_phi(2.0, 3.0) == doctest::Approx(std::exp(-2.25)).epsilon(1e-13));
    CHECK(char_fn_phi(1.5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(char_fn_phi(1.5, -4.0) == doctest::Approx(char_fn_phi(1.5, 4.0)).epsilon(1e-12));
}

TEST_CASE("rotated-contour evaluation joins the direct one") {
    // xi = 2 is the hand-off point; both sides pinned to high-precision references
    const double ref[3][2] = {{0.240412810023228725, 0.239983513719085433},
                              {0.294494815629086867, 0.293908534836765935},
                              {0.341963593433518712, 0.341269755971296260}};
    const double ps[3] = {1.2, 1.5, 1.8};
    for (int i = 0; i < 3; ++i) {
        CHECK(char_fn_phi(ps[i], 1.999) == doctest::Approx(ref[i][0]).epsilon(1e-9));
        CHECK(char_fn_phi(ps[i], 2.001) == doctest::Approx(ref[i][1]).epsilon(1e-9));
    }
}

TEST_CASE("cross-polytope endpoint constants, dual route") {
    // b_{1,k} = sqrt(k) binom(2k-2, k-1) / 2^{2k-1}
    for (int k = 1; k <= 6; ++k) {
        const EndpointConstants ec = b_constant(1.0, k);
        const double exact = std::sqrt(static_cast<double>(k)) *
                             std::exp(log_binomial(2 * k - 2, k - 1)) /
                             std::pow(2.0, 2 * k - 1);
        CHECK(std::abs(ec.b - exact) < 1e-8);
    }
}

TEST_CASE("euclidean endpoint constants are flat in k") {
    const double first = b_constant(2.0, 1).b;
    CHECK(first == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
    for (int k = 2; k <= 5; ++k) CHECK(std::abs(b_constant(2.0, k).b - first) < 1e-9);
}

TEST_CASE("endpoint profile values") {
    CHECK(endpoint_a0(BallParams(1.0, 3), 1) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(endpoint_a0(BallParams(1.0, 3), 2) ==
          doctest::Approx(3.0 * std::sqrt(2.0) / 4.0).epsilon(1e-9));
    CHECK(cross_polytope_a0(3, 1) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(cross_polytope_a0(3, 2) == doctest::Approx(3.0 * std::sqrt(2.0) / 4.0).epsilon(1e-14));
    CHECK(cross_polytope_a0(4, 4) == doctest::Approx(4.0 * 2.0 * 20.0 / 128.0).epsilon(1e-13));
}

TEST_CASE("fourier route matches the exact cross-polytope values") {
    for (int k = 1; k <= 5; ++k)
        CHECK(std::abs(endpoint_a0(BallParams(1.0, 5), k) - cross_polytope_a0(5, k)) < 1e-8);
}

TEST_CASE("central-section volume from the endpoint constant") {
    // diagonal section of the square [-1,1]^2 scaled: S_{1,2} = sqrt(2)
    CHECK(b_constant(1.0, 2).s_section == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    // S_{p,1} = 1 for every p
    CHECK(b_constant(1.5, 1).s_section == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("deterministic chain strictly decreases at t = 0") {
    for (double p : {1.0, 1.5}) {
        const ChainReport rep = chain_check(BallParams(p, 5), 0.0, 0, RngStream{0, 0});
        CHECK(rep.deterministic);
        CHECK(rep.strictly_decreasing);
        CHECK(rep.values.size() == 5);
    }
}

TEST_CASE("positive-time chain strictly decreases") {
    const ChainReport rep = chain_check(BallParams(1.5, 4), 1.0, 400000, RngStream{13, 0});
    CHECK_FALSE(rep.deterministic);
    CHECK(rep.strictly_decreasing);
}

TEST_CASE("p = 2 and negative t are refused") {
    CHECK_THROWS_AS(chain_check(BallParams(2.0, 3), 0.0, 0, RngStream{0, 0}), std::domain_error);
    CHECK_THROWS_AS(chain_check(BallParams(1.5, 3), -0.1, 0, RngStream{0, 0}),
                    std::domain_error);
}
