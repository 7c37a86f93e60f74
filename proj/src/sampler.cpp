#include "lpflow/sampler.hpp"

#include <cmath>

namespace lpflow {

namespace {

double gamma_ge1(double shape, RngEngine& rng) {
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = rng.next_normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = rng.next_double();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double gamma_sample(double shape, RngEngine& rng) {
    if (!(shape > 0.0)) throw std::domain_error("gamma_sample: requires shape > 0");
    if (shape >= 1.0) return gamma_ge1(shape, rng);
    const double g = gamma_ge1(shape + 1.0, rng);
    const double u = rng.next_double();
    return g * std::pow(u, 1.0 / shape);
}

double gamma_sample(double shape, RngStream stream) {
    RngEngine rng(stream);
    return gamma_sample(shape, rng);
}

std::vector<double> sample_dirichlet(const std::vector<double>& shapes, RngEngine& rng) {
    std::vector<double> t(shapes.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        t[i] = gamma_sample(shapes[i], rng);
        sum += t[i];
    }
    for (double& x : t) x /= sum;
    return t;
}

std::vector<double> sample_dirichlet(const std::vector<double>& shapes, RngStream stream) {
    RngEngine rng(stream);
    return sample_dirichlet(shapes, rng);
}

std::vector<double> sample_ball_raw(double p, int n, RngEngine& rng) {
    const double alpha = 1.0 / p;
    // Dirichlet(1, alpha, ..., alpha), slack first; X_i = eps_i T_i^alpha.
    double slack = gamma_sample(1.0, rng);
    std::vector<double> g(n), sign(n);
    double sum = slack;
    for (int i = 0; i < n; ++i) {
        g[i] = gamma_sample(alpha, rng);
        sign[i] = rng.next_sign();
        sum += g[i];
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = sign[i] * std::pow(g[i] / sum, alpha);
    return x;
}

std::vector<double> sample_uniform_ball(const BallParams& params, RngEngine& rng) {
    return sample_ball_raw(params.p, params.n, rng);
}

std::vector<double> sample_uniform_ball(const BallParams& params, RngStream stream) {
    RngEngine rng(stream);
    return sample_ball_raw(params.p, params.n, rng);
}

double sample_gen_gaussian(double p, RngEngine& rng) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("sample_gen_gaussian: p in [1,2]");
    const double g = gamma_sample(1.0 / p, rng);
    const double s = rng.next_sign();
    return s * std::pow(g, 1.0 / p);
}

double sample_gen_gaussian(double p, RngStream stream) {
    RngEngine rng(stream);
    return sample_gen_gaussian(p, rng);
}

}  // namespace lpflow
