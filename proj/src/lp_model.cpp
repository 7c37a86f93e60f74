#include "lpflow/lp_model.hpp"

#include <cmath>

#include "lpflow/special.hpp"

namespace lpflow {

double ball_volume(const BallParams& params) {
    const double lg = params.n * (std::log(2.0) + log_gamma(1.0 + params.alpha)) -
                      log_gamma(1.0 + params.n * params.alpha);
    return std::exp(lg);
}

double coordinate_moment(const BallParams& params, double r) {
    if (!(r > -1.0)) throw std::domain_error("coordinate_moment: requires r > -1");
    const double a = params.alpha;
    const int n = params.n;
    const double lg = log_gamma(1.0 + n * a) + log_gamma((r + 1.0) * a) -
                      log_gamma(a) - log_gamma(1.0 + (n + r) * a);
    return std::exp(lg);
}

MomentSet moment_set(const BallParams& params) {
    MomentSet m;
    m.volume = ball_volume(params);
    m.v = coordinate_moment(params, 2.0);
    m.m4 = coordinate_moment(params, 4.0);
    m.delta = m.m4 - 3.0 * m.v * m.v;
    m.big_r = m.m4 / (m.v * m.v);
    const double a = params.alpha;
    m.c_norm = std::exp(log_gamma(1.0 + params.n * a) - std::log(2.0) -
                        log_gamma(1.0 + a) - log_gamma(1.0 + (params.n - 1) * a));
    return m;
}

double coordinate_density(const BallParams& params, double u) {
    const double au = std::abs(u);
    if (au >= 1.0) return 0.0;
    const double a = params.alpha;
    const double c = std::exp(log_gamma(1.0 + params.n * a) - std::log(2.0) -
                              log_gamma(1.0 + a) - log_gamma(1.0 + (params.n - 1) * a));
    return c * std::pow(1.0 - std::pow(au, params.p), (params.n - 1) * a);
}

std::pair<Rational, Rational> p1_mixed_fourth(int n) {
    if (n < 2) throw std::domain_error("p1_mixed_fourth: requires n >= 2");
    const std::int64_t d = static_cast<std::int64_t>(n + 1) * (n + 2) * (n + 3) * (n + 4);
    return {Rational(24, d), Rational(4, d)};
}

}  // namespace lpflow
