#include "lpflow/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "lpflow/profile.hpp"
#include "lpflow/special.hpp"

namespace lpflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Direct route: phi_p(xi) = int_0^inf cos(xi x) e^{-x^p} dx / Gamma(1+1/p).
// Few oscillations for small xi; the integrand dies at x ~ 42^{1/p}.
double phi_direct(double p, double xi, const QuadratureSpec& spec) {
    const double cut = std::pow(42.0, 1.0 / p);
    auto f = [&](double x) { return std::cos(xi * x) * std::exp(-std::pow(x, p)); };
    const QuadResult q = integrate_adaptive(f, 0.0, cut, spec);
    return q.value / std::exp(log_gamma(1.0 + 1.0 / p));
}

// Rotated contour x = e^{i psi} r with psi = pi/(2p): x^p becomes i r^p, so
// the integrand decays like e^{-xi r sin psi} with O(1) total oscillation.
double phi_rotated(double p, double xi, const QuadratureSpec& spec) {
    const double psi = kPi / (2.0 * p);
    const double c = std::cos(psi), s = std::sin(psi);
    const double cut = 45.0 / (xi * s);
    auto f = [&](double r) {
        return std::exp(-xi * r * s) * std::cos(psi + xi * r * c - std::pow(r, p));
    };
    const QuadResult q = integrate_adaptive(f, 0.0, cut, spec);
    return q.value / std::exp(log_gamma(1.0 + 1.0 / p));
}

}  // namespace

double char_fn_phi(double p, double xi, const QuadratureSpec& spec) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("char_fn_phi: p must be in [1,2]");
    xi = std::abs(xi);
    if (p == 1.0) return 1.0 / (1.0 + xi * xi);
    if (p == 2.0) return std::exp(-xi * xi / 4.0);
    if (xi < 2.0) return phi_direct(p, xi, spec);
    return phi_rotated(p, xi, spec);
}

EndpointConstants b_constant(double p, int k, const QuadratureSpec& spec) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::domain_error("b_constant: p must be in [1,2]");
    if (k < 1) throw std::domain_error("b_constant: k must be >= 1");

    EndpointConstants out;
    out.p = p;
    out.k = k;
    if (k == 1) {
        // density of g_p at zero
        out.b = 1.0 / (2.0 * std::exp(log_gamma(1.0 + 1.0 / p)));
        out.err = 0.0;
        out.method = EndpointMethod::ClosedForm;
    } else {
        // phi_p > 0 and ~ c xi^{-(1+p)}, so the tail of phi^k past Xi is about
        // phi(Xi)^k Xi / (k(1+p) - 1); grow Xi until that clears the tolerance.
        const double tail_rate = k * (1.0 + p) - 1.0;
        double cut = 50.0;
        auto tail = [&](double x) { return std::pow(char_fn_phi(p, x, spec), k) * x / tail_rate; };
        while (tail(cut) > 0.5 * spec.abs_tol && cut < 1e7) cut *= 2.0;
        auto f = [&](double xi) { return std::pow(char_fn_phi(p, xi, spec), k); };
        const QuadResult q = integrate_adaptive(f, 0.0, cut, spec);
        out.b = std::sqrt(static_cast<double>(k)) / kPi * q.value;
        out.err = std::sqrt(static_cast<double>(k)) / kPi * (q.err + tail(cut));
        out.method = EndpointMethod::Fourier;
    }
    // b = Gamma(1+(k-1)/p) S / (2 Gamma(1+1/p))^k, inverted exactly.
    const double log_pref =
        log_gamma(1.0 + (k - 1) / p) - k * (std::log(2.0) + log_gamma(1.0 + 1.0 / p));
    out.s_section = out.b / std::exp(log_pref);
    return out;
}

double endpoint_a0(const BallParams& params, int k, const QuadratureSpec& spec) {
    if (k < 1 || k > params.n) throw std::domain_error("endpoint_a0: k out of [1,n]");
    const double pref = gamma_ratio(1.0 + params.n / params.p, 1.0 + (params.n - 1) / params.p);
    return pref * b_constant(params.p, k, spec).b;
}

double cross_polytope_a0(int n, int k) {
    if (k < 1 || k > n) throw std::domain_error("cross_polytope_a0: k out of [1,n]");
    // n binom(2k-2, k-1) / 2^{2k-1}, exact, times sqrt(k)
    Rational r(n, 1);
    for (int i = 0; i < k - 1; ++i) r *= Rational(k + i, i + 1);  // binom(2k-2,k-1)
    for (int i = 0; i < 2 * k - 1; ++i) r /= Rational(2, 1);
    return r.to_double() * std::sqrt(static_cast<double>(k));
}

ChainReport chain_check(const BallParams& params, double t, long long budget, RngStream stream,
                        const QuadratureSpec& spec) {
    if (params.p >= 2.0) throw std::domain_error("chain_check: requires p < 2");
    if (t < 0.0) throw std::domain_error("chain_check: requires t >= 0");
    ChainReport rep;
    if (t == 0.0) {
        rep.deterministic = true;
        const double pref =
            gamma_ratio(1.0 + params.n / params.p, 1.0 + (params.n - 1) / params.p);
        for (int k = 1; k <= params.n; ++k) {
            const EndpointConstants c = b_constant(params.p, k, spec);
            rep.values.push_back(pref * c.b);
            rep.errs.push_back(pref * c.err);
        }
        rep.strictly_decreasing = true;
        for (int k = 0; k + 1 < params.n; ++k) {
            const double gap = rep.values[k] - rep.values[k + 1];
            rep.gap_means.push_back(gap);
            rep.gap_ses.push_back(rep.errs[k] + rep.errs[k + 1]);
            if (!(gap > rep.errs[k] + rep.errs[k + 1])) {
                rep.strictly_decreasing = false;
                if (rep.failing_index < 0) rep.failing_index = k;
            }
        }
        return rep;
    }

    std::vector<Direction> dirs;
    for (int k = 1; k <= params.n; ++k) dirs.push_back(Direction::canonical(k, params.n));
    const ChainEstimate est = laplace_m_chain(params, t, dirs, budget, stream);
    rep.values = est.values;
    rep.errs = est.ses;
    rep.gap_means = est.gap_means;
    rep.gap_ses = est.gap_ses;
    rep.samples = est.samples;
    rep.strictly_decreasing = true;
    for (std::size_t k = 0; k < rep.gap_means.size(); ++k) {
        if (!(rep.gap_means[k] > 3.0 * rep.gap_ses[k])) {
            rep.strictly_decreasing = false;
            rep.failing_index = static_cast<int>(k);
            break;
        }
    }
    return rep;
}

}  // namespace lpflow
