#pragma once

#include <string>
#include <vector>

#include "lpflow/lp_model.hpp"
#include "lpflow/quadrature.hpp"
#include "lpflow/rng.hpp"

namespace lpflow {

/// Unit direction with its squared-coordinate simplex vector.
struct Direction {
    std::vector<double> theta;
    std::vector<double> squared;

    /// Normalizes the input to unit Euclidean norm.
    explicit Direction(std::vector<double> v);

    static Direction e1(int n);
    static Direction diagonal(int n);
    /// Canonical u^{(k)}: k equal coordinates 1/sqrt(k), then zeros.
    static Direction canonical(int k, int n);

    int dim() const { return static_cast<int>(theta.size()); }
};

enum class EstimateMethod { MonteCarlo, Quadrature };

struct ProfileEstimate {
    double value = 0.0;
    double err = 0.0;  // MC standard error or quadrature bound
    EstimateMethod method = EstimateMethod::MonteCarlo;
    long long samples_or_panels = 0;
};

/// Joint common-random-number estimate over a list of directions,
/// with paired statistics for consecutive gaps value[k] - value[k+1].
struct ChainEstimate {
    std::vector<double> values;
    std::vector<double> ses;
    std::vector<double> gap_means;
    std::vector<double> gap_ses;
    long long samples = 0;
};

/// Number of worker threads used by the Monte Carlo sweeps (results are
/// independent of this setting; chunking is fixed by the sample budget).
void set_mc_threads(int threads);
int mc_threads();

/// M_{p,n,t}(theta) = E exp(-<X,theta>^2 / (2t)) by Monte Carlo.
ProfileEstimate laplace_m(const BallParams& params, double t, const Direction& dir,
                          long long budget, RngStream stream);

/// Shared-sample evaluation of M over several directions at once.
ChainEstimate laplace_m_chain(const BallParams& params, double t,
                              const std::vector<Direction>& dirs, long long budget,
                              RngStream stream);

/// A = M / sqrt(2 pi t): central density of the smoothed projection.
ProfileEstimate profile_a(const BallParams& params, double t, const Direction& dir,
                          long long budget, RngStream stream);

/// Standardized profile: sqrt(v + t) * A.
ProfileEstimate profile_a_tilde(const BallParams& params, double t, const Direction& dir,
                                long long budget, RngStream stream);

/// Coordinate-direction profile Phi_{p,n}(t) by deterministic quadrature.
ProfileEstimate coordinate_profile_phi(const BallParams& params, double t,
                                       const QuadratureSpec& spec = {});

}  // namespace lpflow
