#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lpflow/quadrature.hpp"
#include "lpflow/rational.hpp"
#include "lpflow/rng.hpp"

namespace lpflow {

/// Exact polynomial over Rational, monomial basis, ascending degree.
struct RationalPoly {
    std::vector<Rational> c;

    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim();
    Rational eval(const Rational& x) const;
    double eval(double x) const;

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    RationalPoly operator-() const;
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c == b.c; }
    /// Exact division; throws if the remainder is nonzero.
    friend RationalPoly operator/(const RationalPoly& a, const RationalPoly& b);
};

/// Bernstein coefficients of poly on [0,1] at the given degree:
/// b_j = sum_i a_i C(j,i)/C(N,i).
std::vector<Rational> bernstein_coeffs(const RationalPoly& poly, int degree);

struct PolyIneqReport {
    bool bernstein_lists_match = false;  // all four published coefficient lists
    bool boundary_identity = false;      // F_s(s) = (1-s)^2 (1+s)^2 (s^2-s+1)
    long long samples = 0;
    long long negatives = 0;  // count of F_s(r) < 0 in the randomized sweep
    double min_value = 0.0;
};

/// Exact certificate + randomized sweep for
/// (1+s^2)(1+r)(1+r^3) <= 2(1+r^2 s)^2 on s^2 <= r <= s.
PolyIneqReport verify_poly_inequality(long long sample_count, RngStream stream);

struct CheckReport {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
};

/// alpha int_a^b t^{2a-1}(1-t)^d dt  <=  (b^{2a}-a^{2a})((1-a)^d+(1-b)^d)/4.
CheckReport beta_trapezoid_check(double alpha, double delta, double a, double b,
                                 const QuadratureSpec& spec = {});

/// Q_l(x,y) >= Q_l(y,x) with Q_l(x,y) = Phi_l(By-x) - Phi_l(By+x),
/// Phi_l(t) = (l^2-t^2)_+. Closed-form evaluation.
CheckReport two_interval_check(double ell, double b_coef, double x, double y);

enum class RootEq { GPlus, GMinus, H };  // G = L, G = -L, H = L

struct LayerRoot {
    double s = 0.0;
    RootEq eq = RootEq::GPlus;
    int branch = 0;  // for H = L: 0 increasing, 1 decreasing
};

enum class ComponentKind { Central, Mixed, Cap };

/// One instance of the centered layer inequality, alpha in (1/2,1), p = 1/alpha.
struct LayerScenario {
    double alpha = 0.0;
    double exponent = 0.0;     // delta >= 3 alpha
    double coefficient = 0.0;  // B > 0
    double level = 0.0;        // L > 0
    std::vector<LayerRoot> roots;
    std::vector<std::pair<double, double>> active;  // components of {|G| < L < H}
    std::vector<ComponentKind> kinds;
    bool tangency = false;  // level within 1e-9 of the maximum of H
};

/// Fills roots of |G| = L and H = L (bisection to 1e-12), the active set, and
/// the component taxonomy. Tangent levels set the flag; callers perturb.
LayerScenario layer_roots(LayerScenario scenario);

/// Weighted centered layer inequality: endpoint sums vs bulk integral.
CheckReport wcl_check(const LayerScenario& scenario, const QuadratureSpec& spec = {});

struct DltReport {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double route_gap = 0.0;  // |direct - A * wcl| across both sides
};

/// Dual layer inequality, checked directly on h, g and again through the
/// change of variables B = x/A, L = 1/A, delta = beta + alpha - 1.
DltReport dlt_check(double alpha, double beta, double a_coef, double x_level,
                    const QuadratureSpec& spec = {});

/// Test data for the distributional second-derivative identity.
struct QuadraticLayerCase {
    std::function<double(double)> L, D, W;    // values on [r_lo, r_hi]
    std::function<double(double)> Lp, Dp;     // derivatives
    double r_lo = 0.0, r_hi = 1.0;
};

struct SecondDerivReport {
    bool holds = false;
    double fd_value = 0.0;       // 4 x^3 G''(q) by five-point stencil
    double formula_value = 0.0;  // endpoint sums minus bulk
    double gap = 0.0;
};

SecondDerivReport second_derivative_identity_check(const QuadraticLayerCase& tc, double x,
                                                   const QuadratureSpec& spec = {});

/// Finite discrete law (atoms with probabilities summing to 1).
struct DiscreteLaw {
    std::vector<double> atoms;
    std::vector<double> probs;
};

struct AppendReport {
    bool holds = false;
    double worst_margin = 0.0;  // min over rho of rhs - lhs
    double moment_shift_gap = 0.0;
};

/// Beta-Rademacher append step: checks that appending (1-T)^a Y + c T^a eps
/// preserves the lower stop-loss order of the squared laws. Y laws must be
/// exactly convex-ordered in squares (validated; domain error otherwise).
AppendReport append_lemma_check(double alpha, double beta, double c, const DiscreteLaw& y1,
                                const DiscreteLaw& y2, const QuadratureSpec& spec = {});

struct BaseCaseReport {
    bool monotone = false;            // F_rho nonincreasing across the grid
    bool boundary_nonnegative = false;  // -F' >= 0 by the boundary identity
    bool consistent = false;          // FD of F vs boundary identity
    double max_fd_gap = 0.0;
    std::vector<double> f_values;
    std::vector<double> minus_fprime;
};

/// Two-dimensional base case: F_rho(phi) = int_{B_p^2} (rho^2 - <theta,x>^2)_+,
/// theta = (cos phi, sin phi), phi in [0, pi/4].
BaseCaseReport base_case_check(double p, const std::vector<double>& phi_grid, double rho,
                               const QuadratureSpec& spec = {});

}  // namespace lpflow
