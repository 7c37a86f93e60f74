#include "lpflow/special.hpp"

#include <cmath>

namespace lpflow {

namespace {

// Lanczos, g = 7, 9 terms. Accurate to ~1e-15 relative for Re(x) > 0.5.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kPi = 3.141592653589793238462643;
constexpr double kLn2Pi = 1.8378770664093454835606594;  // ln(2*pi)

double lanczos_log_gamma(double x) {
    // valid for x >= 0.5
    double a = kLanczos[0];
    double t = x + 6.5;  // x + g - 0.5
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i - 1.0);
    return 0.5 * kLn2Pi + (x - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
    }
    return lanczos_log_gamma(x);
}

double gamma_ratio(double a, double b) {
    return std::exp(log_gamma(a) - log_gamma(b));
}

double gaussian_abs_moment(double p) {
    return std::exp(0.5 * p * std::log(2.0) + log_gamma(0.5 * (p + 1.0))) /
           std::sqrt(kPi);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw std::domain_error("log_binomial: k out of range");
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

}  // namespace lpflow
