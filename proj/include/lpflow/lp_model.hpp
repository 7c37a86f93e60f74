#pragma once

#include <utility>

#include "lpflow/rational.hpp"

namespace lpflow {

/// Parameters of the unit lp ball. p = 2 is admitted for rotational-invariance
/// sanity checks only; the strict-order operations reject it themselves.
struct BallParams {
    double p;
    int n;
    double alpha;  // 1/p

    BallParams(double p_, int n_) : p(p_), n(n_), alpha(1.0 / p_) {
        if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("BallParams: p must be in [1,2]");
        if (n < 1) throw std::domain_error("BallParams: n must be >= 1");
    }
};

struct MomentSet {
    double volume;  // |B_p^n|
    double v;       // E X1^2
    double m4;      // E X1^4
    double delta;   // m4 - 3 v^2
    double big_r;   // m4 / v^2
    double c_norm;  // coordinate density normalizer
};

/// (2 Gamma(1+1/p))^n / Gamma(1+n/p), evaluated in log space.
double ball_volume(const BallParams& params);

/// E |X1|^r for X uniform on the ball, r > -1.
double coordinate_moment(const BallParams& params, double r);

MomentSet moment_set(const BallParams& params);

/// Density of the first coordinate: C_{p,n} (1-|u|^p)_+^{(n-1)/p}.
double coordinate_density(const BallParams& params, double u);

/// Exact fourth moments for p = 1: (E X_i^4, E X_i^2 X_j^2), n >= 2.
std::pair<Rational, Rational> p1_mixed_fourth(int n);

}  // namespace lpflow
