#pragma once

#include <vector>

#include "lpflow/lp_model.hpp"
#include "lpflow/rng.hpp"

namespace lpflow {

/// Gamma(shape, scale 1) draw. Marsaglia-Tsang for shape >= 1; shapes below 1
/// go through the boost identity Gamma(a) = Gamma(a+1) * U^{1/a}.
double gamma_sample(double shape, RngEngine& rng);
double gamma_sample(double shape, RngStream stream);

/// Normalized independent gamma variates; component i is Beta(shape_i, sum - shape_i).
std::vector<double> sample_dirichlet(const std::vector<double>& shapes, RngEngine& rng);
std::vector<double> sample_dirichlet(const std::vector<double>& shapes, RngStream stream);

/// Uniform draw on B_p^n by the sign-Dirichlet representation, for any p > 0.
/// Stream order per coordinate is magnitude gamma first, then sign.
std::vector<double> sample_ball_raw(double p, int n, RngEngine& rng);

/// Uniform on B_p^n for validated parameters.
std::vector<double> sample_uniform_ball(const BallParams& params, RngEngine& rng);
std::vector<double> sample_uniform_ball(const BallParams& params, RngStream stream);

/// One draw from the generalized Gaussian density e^{-|x|^p} / (2 Gamma(1+1/p)).
double sample_gen_gaussian(double p, RngEngine& rng);
double sample_gen_gaussian(double p, RngStream stream);

}  // namespace lpflow
