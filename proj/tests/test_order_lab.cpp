#include <cmath>
#include <vector>

#include "doctest.h"
#include "lpflow/order_lab.hpp"

using namespace lpflow;

TEST_CASE("majorization basics") {
    const std::vector<double> a = {0.7, 0.2, 0.1};
    const std::vector<double> b = {0.5, 0.3, 0.2};
    const std::vector<double> flat = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK(majorizes(a, a));  // reflexive
    CHECK(majorizes(a, b));
    CHECK_FALSE(majorizes(b, a));
    CHECK(majorizes(b, flat));
    CHECK(majorizes(a, flat));  // transitivity instance
    // order of entries is irrelevant
    CHECK(majorizes(std::vector<double>{0.1, 0.7, 0.2}, b));
    // totals must match
    CHECK_THROWS_AS(majorizes({0.5, 0.5}, {0.3, 0.3}), std::domain_error);
}

TEST_CASE("transfer chains replay to the target") {
    RngEngine rng(RngStream{77, 0});
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<double> s(n);
        double total = 0.0;
        for (double& x : s) {
            x = -std::log(rng.next_double());
            total += x;
        }
        for (double& x : s) x /= total;
        std::vector<TTransfer> mix;
        for (int c = 0; c < 3; ++c) {
            const int i = static_cast<int>(rng.next_u64() % n);
            int j = static_cast<int>(rng.next_u64() % n);
            if (i == j) j = (j + 1) % n;
            mix.push_back({i, j, rng.next_double()});
        }
        const std::vector<double> r = apply_transfers(s, mix);
        CHECK(majorizes(s, r, 1e-10));
        const std::vector<TTransfer> chain = t_transform_chain(s, r, 1e-12);
        const std::vector<double> replay = apply_transfers(s, chain);
        for (int i = 0; i < n; ++i) CHECK(std::abs(replay[i] - r[i]) < 1e-10);
    }
}

TEST_CASE("chain construction refuses non-majorizing inputs") {
    CHECK_THROWS_AS(t_transform_chain({0.5, 0.3, 0.2}, {0.7, 0.2, 0.1}, 1e-12),
                    std::domain_error);
}

TEST_CASE("stop-loss curve on a known sample") {
    const std::vector<double> sq = {0.0, 1.0, 4.0};
    const auto [values, ses] = stop_loss_curve(sq, {2.0});
    CHECK(values[0] == doctest::Approx(1.0).epsilon(1e-13));  // (2+1+0)/3
    CHECK(ses[0] > 0.0);
}

TEST_CASE("convex order holds along a canonical pair") {
    const BallParams params(1.25, 3);
    const Direction theta = Direction::e1(3);
    const Direction eta = Direction::diagonal(3);
    const double v = moment_set(params).v;
    const StopLossReport rep = convex_order_test(params, theta, eta, {0.5 * v, v, 2.0 * v},
                                                 400000, RngStream{19, 0});
    CHECK(rep.verdict == OrderVerdict::ConsistentWithOrder);
    for (std::size_t i = 0; i < rep.thresholds.size(); ++i)
        CHECK(rep.lhs[i] <= rep.rhs[i] + 3.0 * rep.se[i]);
}

TEST_CASE("convex order requires majorization and p < 2") {
    const BallParams params(1.25, 3);
    CHECK_THROWS_AS(convex_order_test(params, Direction::diagonal(3), Direction::e1(3), {0.1},
                                      1000, RngStream{0, 0}),
                    std::domain_error);
    CHECK_THROWS_AS(convex_order_test(BallParams(2.0, 3), Direction::e1(3),
                                      Direction::diagonal(3), {0.1}, 1000, RngStream{0, 0}),
                    std::domain_error);
}

TEST_CASE("schur scan resolves the canonical chain") {
    const BallParams params(1.0, 3);
    std::vector<Direction> chain = {Direction::canonical(1, 3), Direction::canonical(2, 3),
                                    Direction::canonical(3, 3)};
    const SchurScanReport rep = schur_scan(params, 0.2, chain, 400000, RngStream{21, 0});
    CHECK(rep.monotone);
    CHECK(rep.values[0] > rep.values[1]);
    CHECK(rep.values[1] > rep.values[2]);
}

TEST_CASE("schur scan rejects chains without strict majorization") {
    const BallParams params(1.0, 3);
    std::vector<Direction> bad = {Direction::canonical(2, 3), Direction::canonical(2, 3)};
    CHECK_THROWS_AS(schur_scan(params, 0.2, bad, 1000, RngStream{0, 0}), std::domain_error);
}

TEST_CASE("p > 2 counterexample has mass beyond the p <= 2 support bound") {
    const CounterexampleReport rep = p_gt_2_counterexample(3.0, 2, 500000, RngStream{33, 0});
    CHECK(rep.support_bound == doctest::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-13));
    CHECK(rep.prob_exceed - 3.0 * rep.prob_se > 0.0);
    CHECK(rep.excess_mean > 0.0);
    CHECK_THROWS_AS(p_gt_2_counterexample(1.5, 2, 1000, RngStream{0, 0}), std::domain_error);
}
