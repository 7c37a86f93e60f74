#pragma once

#include <vector>

#include "lpflow/lp_model.hpp"
#include "lpflow/quadrature.hpp"

namespace lpflow {

enum class FlowVerdict { Nonmonotone, StrictlyDecreasing };

struct FlowClassification {
    double p = 0.0;
    int n = 0;
    double delta = 0.0;
    double big_r = 0.0;
    FlowVerdict verdict = FlowVerdict::StrictlyDecreasing;
    bool has_witness = false;  // present exactly for Nonmonotone
    double t_neg = 0.0;        // Phi'(t_neg) < 0
    double t_pos = 0.0;        // Phi'(t_pos) > 0
    double dphi_neg = 0.0;
    double dphi_pos = 0.0;
};

struct SignedMeasureCheck {
    std::vector<double> lambda_grid;
    std::vector<double> s_values;
    std::vector<double> s_errs;
    int mu_sign_changes = 0;  // sign changes of the bracketed density factor
    double s_at_zero = 0.0;   // should vanish
    double sprime_at_zero = 0.0;  // -int w dmu; equals Delta_{p,n}
    double quad_err = 0.0;
};

/// Phi'(t) by Richardson-refined central differences of the quadrature route.
double phi_derivative(const BallParams& params, double t, const QuadratureSpec& spec = {});

/// Delta-sign classification of t -> Phi_{p,n}(t), with a numeric witness
/// pair Phi'(t1) < 0 < Phi'(t2) in the nonmonotone case. Requires p < 2, n >= 2.
FlowClassification classify(const BallParams& params, const QuadratureSpec& spec = {});

/// N(p) = min{n >= 2 : R_{p,n} >= 3} by increasing scan (R is increasing in n).
int threshold_n(double p);

/// R_{p,inf} = Gamma(5/p) Gamma(1/p) / Gamma(3/p)^2.
double r_limit(double p);

/// S(lambda) = int_0^1 e^{-lambda w} dmu(w) for the coordinate squared law,
/// with the endpoint identities S(0) = 0 and S'(0) = Delta_{p,n}.
SignedMeasureCheck s_positivity(const BallParams& params, const std::vector<double>& lambda_grid,
                                const QuadratureSpec& spec = {});

/// Argmin of r(w) = w^{p/2-1}/(1-w^{p/2}) on (0,1); satisfies
/// argmin^{p/2} = 1 - p/2. Requires 1 < p < 2.
double bracket_min_check(double p);

}  // namespace lpflow
