#pragma once

#include <stdexcept>

namespace lpflow {

/// ln Gamma(x) for x > 0. Lanczos approximation with reflection below 0.5;
/// relative error well under 1e-13 on [0.1, 500].
double log_gamma(double x);

/// Gamma(a)/Gamma(b), evaluated in log space.
double gamma_ratio(double a, double b);

/// exp(x) of a Gaussian absolute moment: E|Z|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
double gaussian_abs_moment(double p);

/// log of binomial coefficient C(n, k).
double log_binomial(int n, int k);

}  // namespace lpflow
