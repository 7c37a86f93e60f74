#include <cmath>
#include <vector>

#include "doctest.h"
#include "lpflow/lp_model.hpp"
#include "lpflow/sampler.hpp"
#include "lpflow/special.hpp"

using namespace lpflow;

namespace {

struct Moments {
    double mean, var;
};

template <class Draw>
Moments mc_moments(long long n, Draw draw) {
    double s = 0.0, s2 = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    return {m, s2 / n - m * m};
}

}  // namespace

TEST_CASE("gamma sampler matches mean and variance") {
    for (double shape : {0.4, 1.0, 2.5, 7.0}) {
        RngEngine rng(RngStream{101, 0});
        const long long n = 200000;
        const Moments m = mc_moments(n, [&] { return gamma_sample(shape, rng); });
        const double se = std::sqrt(shape / n) * 3.0;  // rough 3 sigma on the mean
        CHECK(std::abs(m.mean - shape) < 5.0 * se);
        CHECK(std::abs(m.var - shape) < 0.05 * shape + 5.0 * se);
    }
}

TEST_CASE("dirichlet sums to one with Beta marginals") {
    RngEngine rng(RngStream{7, 3});
    const std::vector<double> shapes = {1.0, 0.5, 0.5, 2.0};
    double first = 0.0;
    const long long n = 100000;
    for (long long i = 0; i < n; ++i) {
        const std::vector<double> w = sample_dirichlet(shapes, rng);
        double total = 0.0;
        for (double x : w) total += x;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        first += w[0];
    }
    CHECK(std::abs(first / n - 0.25) < 0.005);  // Beta(1,3) mean
}

TEST_CASE("ball samples stay inside and reproduce the second moment") {
    const BallParams params(1.0, 3);
    RngEngine rng(RngStream{11, 0});
    const long long n = 400000;
    double s2 = 0.0, s4 = 0.0;
    for (long long i = 0; i < n; ++i) {
        const std::vector<double> x = sample_uniform_ball(params, rng);
        double nrm = 0.0;
        for (double c : x) nrm += std::abs(c);
        CHECK(nrm <= 1.0 + 1e-12);
        s2 += x[0] * x[0];
        s4 += x[0] * x[0] * x[0] * x[0];
    }
    const double v = coordinate_moment(params, 2.0);
    const double m4 = coordinate_moment(params, 4.0);
    const double se2 = std::sqrt((m4 - v * v) / n);
    CHECK(std::abs(s2 / n - v) < 5.0 * se2);
    const double m8 = coordinate_moment(params, 8.0);
    const double se4 = std::sqrt((m8 - m4 * m4) / n);
    CHECK(std::abs(s4 / n - m4) < 5.0 * se4);
}

TEST_CASE("coordinates are sign-symmetric and exchangeable") {
    const BallParams params(1.5, 4);
    RngEngine rng(RngStream{23, 0});
    const long long n = 200000;
    double diff = 0.0, diffsq = 0.0, odd = 0.0, oddsq = 0.0;
    for (long long i = 0; i < n; ++i) {
        const std::vector<double> x = sample_uniform_ball(params, rng);
        const double d = x[0] * x[0] - x[1] * x[1];
        diff += d;
        diffsq += d * d;
        odd += x[0];
        oddsq += x[0] * x[0];
    }
    const double nd = static_cast<double>(n);
    const double se_diff = std::sqrt((diffsq / nd - (diff / nd) * (diff / nd)) / nd);
    const double se_odd = std::sqrt((oddsq / nd - (odd / nd) * (odd / nd)) / nd);
    CHECK(std::abs(diff) / nd < 5.0 * se_diff);
    CHECK(std::abs(odd) / nd < 5.0 * se_odd);
}

TEST_CASE("streams are reproducible and distinct") {
    const BallParams params(1.2, 3);
    RngEngine a(RngStream{5, 1});
    RngEngine b(RngStream{5, 1});
    RngEngine c(RngStream{5, 2});
    const std::vector<double> xa = sample_uniform_ball(params, a);
    const std::vector<double> xb = sample_uniform_ball(params, b);
    const std::vector<double> xc = sample_uniform_ball(params, c);
    CHECK(xa == xb);
    CHECK(xa != xc);
}

TEST_CASE("generalized gaussian second moment") {
    // E X^2 = Gamma(3/p) / Gamma(1/p)
    for (double p : {1.0, 1.5, 2.0}) {
        RngEngine rng(RngStream{31, 0});
        const long long n = 300000;
        const Moments m = mc_moments(n, [&] { return sample_gen_gaussian(p, rng); });
        const double target = std::exp(log_gamma(3.0 / p) - log_gamma(1.0 / p));
        CHECK(std::abs(m.mean) < 0.01);
        CHECK(std::abs(m.var - target) < 0.02 * target);
    }
}

TEST_CASE("raw sampler admits p > 2") {
    RngEngine rng(RngStream{41, 0});
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> x = sample_ball_raw(3.0, 2, rng);
        CHECK(std::pow(std::abs(x[0]), 3.0) + std::pow(std::abs(x[1]), 3.0) <= 1.0 + 1e-12);
    }
}
