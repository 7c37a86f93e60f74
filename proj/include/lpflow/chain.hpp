#pragma once

#include <vector>

#include "lpflow/lp_model.hpp"
#include "lpflow/quadrature.hpp"
#include "lpflow/rng.hpp"

namespace lpflow {

enum class EndpointMethod { Fourier, ClosedForm, MonteCarlo };

struct EndpointConstants {
    double p = 0.0;
    int k = 0;
    double b = 0.0;          // b_{p,k}, density at zero of (Z_1+...+Z_k)/sqrt(k)
    double s_section = 0.0;  // central-section volume S_{p,k}, by inversion
    double err = 0.0;
    EndpointMethod method = EndpointMethod::Fourier;
};

struct ChainReport {
    std::vector<double> values;
    std::vector<double> errs;       // quadrature bounds (t = 0) or SEs (t > 0)
    std::vector<double> gap_means;  // only filled for t > 0
    std::vector<double> gap_ses;
    bool strictly_decreasing = false;
    int failing_index = -1;
    bool deterministic = false;  // true for the t = 0 route
    long long samples = 0;
};

/// Characteristic function of the generalized Gaussian g_p, p in [1,2].
/// Closed forms for p = 1, 2; quadrature otherwise (rotated contour for
/// large xi, where the direct cosine integral oscillates).
double char_fn_phi(double p, double xi, const QuadratureSpec& spec = {});

/// b_{p,k} = (sqrt(k)/2pi) int phi_p^k dxi. k = 1 uses the closed form
/// g_p(0) = 1/(2 Gamma(1+1/p)). Also fills S_{p,k} by exact inversion.
EndpointConstants b_constant(double p, int k, const QuadratureSpec& spec = {});

/// A_{p,n,0}(u^{(k)}) = [Gamma(1+n/p)/Gamma(1+(n-1)/p)] b_{p,k}.
double endpoint_a0(const BallParams& params, int k, const QuadratureSpec& spec = {});

/// Exact p = 1 value: n sqrt(k) binom(2k-2, k-1) / 2^{2k-1}.
double cross_polytope_a0(int n, int k);

/// Strict decrease along the canonical chain u^{(1)},...,u^{(n)}.
/// t = 0 is deterministic (endpoint_a0); t > 0 goes through common-random-
/// number Monte Carlo with gaps resolved beyond 3 combined SE. p = 2 refused.
ChainReport chain_check(const BallParams& params, double t, long long budget, RngStream stream,
                        const QuadratureSpec& spec = {});

}  // namespace lpflow
