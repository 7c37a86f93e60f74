#include "lpflow/flow_classifier.hpp"

#include <cmath>
#include <stdexcept>

#include "lpflow/profile.hpp"
#include "lpflow/special.hpp"

namespace lpflow {

namespace {

// Signed density of mu for the coordinate squared law W = X_1^2:
// dmu(w) = q(w) w [v(n-1) w^{p/2-1}/(1-w^{p/2}) - 1] dw on (0,1).
double mu_density(const BallParams& params, double v, double c, double w) {
    if (w <= 0.0 || w >= 1.0) return 0.0;
    const double p = params.p;
    const double wp2 = std::pow(w, 0.5 * p);
    const double e = (params.n - 1) / p;
    const double bracket = v * (params.n - 1) * std::pow(w, 0.5 * p - 1.0) / (1.0 - wp2) - 1.0;
    return c * std::sqrt(w) * std::pow(1.0 - wp2, e) * bracket;
}

// Integral of g(w) dmu(w) with the endpoint substitutions w = y^2 on the
// left half and w = 1 - z^2 on the right half (both integrands stay bounded).
QuadResult mu_integral(const BallParams& params, double v,
                       const std::function<double(double)>& g, const QuadratureSpec& spec) {
    const double half = 1.0 / std::sqrt(2.0);
    const double c = moment_set(params).c_norm;
    auto left = [&](double y) {
        const double w = y * y;
        return g(w) * mu_density(params, v, c, w) * 2.0 * y;
    };
    auto right = [&](double z) {
        const double w = 1.0 - z * z;
        return g(w) * mu_density(params, v, c, w) * 2.0 * z;
    };
    const QuadResult a = integrate_adaptive(left, 0.0, half, spec);
    const QuadResult b = integrate_adaptive(right, 0.0, half, spec);
    return {a.value + b.value, a.err + b.err};
}

}  // namespace

double phi_derivative(const BallParams& params, double t, const QuadratureSpec& spec) {
    const double h = t / 100.0;
    auto central = [&](double hh) {
        const double up = coordinate_profile_phi(params, t + hh, spec).value;
        const double dn = coordinate_profile_phi(params, t - hh, spec).value;
        return (up - dn) / (2.0 * hh);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

FlowClassification classify(const BallParams& params, const QuadratureSpec& spec) {
    if (params.p >= 2.0) throw std::domain_error("classify: requires p < 2");
    if (params.n < 2) throw std::domain_error("classify: requires n >= 2");
    const MomentSet m = moment_set(params);
    FlowClassification out;
    out.p = params.p;
    out.n = params.n;
    out.delta = m.delta;
    out.big_r = m.big_r;
    out.verdict = m.delta < 0.0 ? FlowVerdict::Nonmonotone : FlowVerdict::StrictlyDecreasing;
    if (out.verdict == FlowVerdict::Nonmonotone) {
        QuadratureSpec tight = spec;
        tight.abs_tol = std::min(spec.abs_tol, 1e-13);
        // small-time derivative is negative
        double t1 = 1e-3;
        double d1 = phi_derivative(params, t1, tight);
        while (!(d1 < 0.0) && t1 > 1e-7) {
            t1 *= 0.25;
            d1 = phi_derivative(params, t1, tight);
        }
        // large-time derivative turns positive at scale O(1)
        double t2 = 0.0, d2 = 0.0;
        for (double t = 0.05; t <= 2.0e4; t *= 1.7) {
            const double d = phi_derivative(params, t, tight);
            if (d > 0.0) {
                t2 = t;
                d2 = d;
                break;
            }
        }
        if (d1 < 0.0 && d2 > 0.0) {
            out.has_witness = true;
            out.t_neg = t1;
            out.dphi_neg = d1;
            out.t_pos = t2;
            out.dphi_pos = d2;
        }
    }
    return out;
}

int threshold_n(double p) {
    if (!(p >= 1.0 && p < 2.0)) throw std::domain_error("threshold_n: p must be in [1,2)");
    // R_{p,n} increases in n with limit R_{p,inf} > 3, so the scan terminates.
    for (int n = 2; n < 100000; ++n) {
        if (moment_set(BallParams(p, n)).big_r >= 3.0) return n;
    }
    throw std::runtime_error("threshold_n: scan did not terminate");
}

double r_limit(double p) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("r_limit: p must be in [1,2]");
    return std::exp(log_gamma(5.0 / p) + log_gamma(1.0 / p) - 2.0 * log_gamma(3.0 / p));
}

SignedMeasureCheck s_positivity(const BallParams& params, const std::vector<double>& lambda_grid,
                                const QuadratureSpec& spec) {
    if (params.p >= 2.0) throw std::domain_error("s_positivity: requires p < 2");
    for (double l : lambda_grid)
        if (!(l > 0.0)) throw std::domain_error("s_positivity: lambda grid must be positive");
    const double v = coordinate_moment(params, 2.0);

    SignedMeasureCheck out;
    out.lambda_grid = lambda_grid;
    for (double l : lambda_grid) {
        const QuadResult q =
            mu_integral(params, v, [l](double w) { return std::exp(-l * w); }, spec);
        out.s_values.push_back(q.value);
        out.s_errs.push_back(q.err);
    }
    const QuadResult s0 = mu_integral(params, v, [](double) { return 1.0; }, spec);
    const QuadResult m1 = mu_integral(params, v, [](double w) { return w; }, spec);
    out.s_at_zero = s0.value;
    out.sprime_at_zero = -m1.value;  // S'(0) = -int w dmu = Delta
    out.quad_err = s0.err + m1.err;

    // the bracketed factor is +,-,+ : exactly two sign changes
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < 2000; ++i) {
        const double w = i / 2000.0;
        const double wp2 = std::pow(w, 0.5 * params.p);
        const double f = v * (params.n - 1) * std::pow(w, 0.5 * params.p - 1.0) / (1.0 - wp2) - 1.0;
        if (i > 1 && f * prev < 0.0) ++changes;
        prev = f;
    }
    out.mu_sign_changes = changes;
    return out;
}

double bracket_min_check(double p) {
    if (!(p > 1.0 && p < 2.0)) throw std::domain_error("bracket_min_check: requires 1 < p < 2");
    auto r = [p](double w) {
        return std::pow(w, 0.5 * p - 1.0) / (1.0 - std::pow(w, 0.5 * p));
    };
    // golden-section: r decreases then increases
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 1e-12, b = 1.0 - 1e-12;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = r(c), fd = r(d);
    for (int i = 0; i < 120; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = r(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = r(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace lpflow
