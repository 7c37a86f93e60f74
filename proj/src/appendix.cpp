#include "lpflow/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpflow/special.hpp"

namespace lpflow {

void RationalPoly::trim() {
    while (!c.empty() && c.back() == Rational(0)) c.pop_back();
}

Rational RationalPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double RationalPoly::eval(double x) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) { return a + (-b); }

RationalPoly RationalPoly::operator-() const {
    RationalPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

RationalPoly operator/(const RationalPoly& a, const RationalPoly& b) {
    if (b.c.empty()) throw std::domain_error("RationalPoly: division by zero polynomial");
    RationalPoly rem = a, quot;
    const int db = b.degree();
    if (rem.degree() >= db) quot.c.assign(rem.degree() - db + 1, Rational(0));
    while (rem.degree() >= db && !rem.c.empty()) {
        const int k = rem.degree() - db;
        const Rational f = rem.c.back() / b.c.back();
        quot.c[k] = f;
        for (int i = 0; i <= db; ++i) rem.c[k + i] -= f * b.c[i];
        rem.trim();
    }
    if (!rem.c.empty()) throw std::domain_error("RationalPoly: inexact division");
    quot.trim();
    return quot;
}

namespace {

Rational binom_r(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
    return r;
}

}  // namespace

std::vector<Rational> bernstein_coeffs(const RationalPoly& poly, int degree) {
    if (degree < poly.degree()) throw std::domain_error("bernstein_coeffs: degree too small");
    std::vector<Rational> b(degree + 1, Rational(0));
    for (int j = 0; j <= degree; ++j)
        for (int i = 0; i <= std::min(j, poly.degree()); ++i)
            b[j] += poly.c[i] * binom_r(j, i) / binom_r(degree, i);
    return b;
}

namespace {

// polynomial in z whose coefficients are exact polynomials in s
using Poly2 = std::vector<RationalPoly>;

Poly2 p2_const(RationalPoly p) { return {std::move(p)}; }

Poly2 p2_add(const Poly2& a, const Poly2& b) {
    Poly2 r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

Poly2 p2_neg(const Poly2& a) {
    Poly2 r = a;
    for (auto& p : r) p = -p;
    return r;
}

Poly2 p2_mul(const Poly2& a, const Poly2& b) {
    Poly2 r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

void p2_trim(Poly2& a) {
    while (!a.empty() && a.back().c.empty()) a.pop_back();
}

// synthetic division by (z - 1); remainder must vanish
Poly2 p2_div_z_minus_1(const Poly2& a) {
    Poly2 in = a;
    p2_trim(in);
    if (in.empty()) return {};
    Poly2 q(in.size() - 1);
    RationalPoly carry = in.back();
    for (int i = static_cast<int>(in.size()) - 2; i >= 0; --i) {
        q[i] = carry;
        carry = in[i] + carry;
    }
    if (!carry.c.empty()) throw std::domain_error("p2_div_z_minus_1: nonzero remainder");
    return q;
}

RationalPoly rp(std::initializer_list<Rational> coeffs) {
    return RationalPoly(std::vector<Rational>(coeffs));
}

}  // namespace

PolyIneqReport verify_poly_inequality(long long sample_count, RngStream stream) {
    PolyIneqReport rep;

    const RationalPoly P0 = rp({1, 1, -1, -3, 0, 1, 2, 1});
    const RationalPoly P1 = rp({3, 0, -6, 0, 3, 4});
    const RationalPoly P2 = rp({3, 3, -8, -3, 9, 6});
    const RationalPoly P3 = rp({1, 0, -3, 4});

    const std::vector<std::vector<Rational>> published = {
        {1, {8, 7}, {26, 21}, {6, 5}, {33, 35}, {3, 7}, 0, 2},
        {3, 3, {12, 5}, {6, 5}, 0, 4},
        {3, {18, 5}, {17, 5}, {21, 10}, {6, 5}, 10},
        {1, 1, 0, 2}};
    bool lists_ok = bernstein_coeffs(P0, 7) == published[0] &&
                    bernstein_coeffs(P1, 5) == published[1] &&
                    bernstein_coeffs(P2, 5) == published[2] &&
                    bernstein_coeffs(P3, 3) == published[3];

    // F_s(r) = 2(1+r^2 s)^2 - (1+s^2)(1+r)(1+r^3) with r = s^2 + z(s - s^2):
    // -H_s must come out with the published Bernstein coefficients in z.
    const RationalPoly s = rp({0, 1});
    const RationalPoly one = rp({1});
    const Poly2 r = {rp({0, 0, 1}), rp({0, 1, -1})};  // s^2 + z(s - s^2)
    const Poly2 r2 = p2_mul(r, r);
    const Poly2 r3 = p2_mul(r2, r);
    const Poly2 inner = p2_add(p2_const(one), p2_mul(p2_const(s), r2));  // 1 + r^2 s
    const Poly2 lhs = p2_mul(p2_const(rp({2})), p2_mul(inner, inner));
    const Poly2 rhs = p2_mul(p2_const(one + s * s),
                             p2_mul(p2_add(p2_const(one), r), p2_add(p2_const(one), r3)));
    Poly2 f = p2_add(lhs, p2_neg(rhs));

    // F_s(s): substitute z = 1 (equivalently r = s)
    RationalPoly f_at_s;
    for (const auto& ci : f) f_at_s = f_at_s + ci;
    const RationalPoly factored =
        rp({1, -1}) * rp({1, -1}) * rp({1, 1}) * rp({1, 1}) * rp({1, -1, 1});
    rep.boundary_identity = f_at_s == factored;

    // H_s = (F_s(r) - F_s(s)) / (r - s); r - s = (s - s^2)(z - 1)
    Poly2 diff = p2_add(f, p2_const(-f_at_s));
    Poly2 h = p2_div_z_minus_1(diff);
    const RationalPoly s_minus_s2 = rp({0, 1, -1});
    for (auto& ci : h) ci = ci / s_minus_s2;
    const Poly2 minus_h = p2_neg(h);

    // Bernstein coefficients in z at degree 3
    std::vector<RationalPoly> bz(4);
    for (int j = 0; j <= 3; ++j) {
        for (int i = 0; i <= j && i < static_cast<int>(minus_h.size()); ++i) {
            RationalPoly term = minus_h[i];
            const Rational w = binom_r(j, i) / binom_r(3, i);
            for (auto& cc : term.c) cc *= w;
            bz[j] = bz[j] + term;
        }
    }
    const RationalPoly one_minus_s = rp({1, -1});
    const RationalPoly one_plus_s = rp({1, 1});
    const RationalPoly third = rp({{1, 3}});
    const bool bivariate_ok = bz[0] == one_minus_s * P0 &&
                              bz[1] == one_minus_s * one_plus_s * third * P1 &&
                              bz[2] == one_minus_s * third * P2 &&
                              bz[3] == one_minus_s * one_plus_s * P3;
    rep.bernstein_lists_match = lists_ok && bivariate_ok;

    // randomized exact sweep over a rational grid with s^2 <= r <= s
    const std::int64_t den = 512;
    RngEngine rng(stream);
    rep.min_value = 1e300;
    for (long long it = 0; it < sample_count; ++it) {
        const std::int64_t i = 1 + static_cast<std::int64_t>(rng.next_u64() % (den - 1));
        const std::int64_t lo = (i * i + den - 1) / den;  // ceil(s^2 den)
        const std::int64_t j = lo + static_cast<std::int64_t>(rng.next_u64() % (i - lo + 1));
        const Rational sv(i, den), rv(j, den);
        const Rational fv = Rational(2) * (Rational(1) + rv * rv * sv) *
                                (Rational(1) + rv * rv * sv) -
                            (Rational(1) + sv * sv) * (Rational(1) + rv) *
                                (Rational(1) + rv * rv * rv);
        ++rep.samples;
        if (fv.sign() < 0) ++rep.negatives;
        rep.min_value = std::min(rep.min_value, fv.to_double());
    }
    return rep;
}

CheckReport beta_trapezoid_check(double alpha, double delta, double a, double b,
                                 const QuadratureSpec& spec) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::domain_error("beta_trapezoid_check: alpha must be in (1/2,1)");
    if (!(delta >= 3.0 * alpha - 1e-12))
        throw std::domain_error("beta_trapezoid_check: delta must be >= 3 alpha");
    if (!(0.0 <= a && a <= b && b <= 1.0))
        throw std::domain_error("beta_trapezoid_check: need 0 <= a <= b <= 1");
    CheckReport rep;
    if (a == b) {
        rep.holds = true;
        return rep;
    }
    auto f = [&](double t) {
        return std::pow(t, 2.0 * alpha - 1.0) * std::pow(1.0 - t, delta);
    };
    const QuadResult q = integrate_adaptive(f, a, b, spec);
    rep.lhs = alpha * q.value;
    rep.rhs = (std::pow(b, 2.0 * alpha) - std::pow(a, 2.0 * alpha)) *
              (std::pow(1.0 - a, delta) + std::pow(1.0 - b, delta)) / 4.0;
    rep.tol = alpha * q.err + 1e-12;
    rep.holds = rep.lhs <= rep.rhs + rep.tol;
    return rep;
}

CheckReport two_interval_check(double ell, double b_coef, double x, double y) {
    if (!(ell >= 0.0)) throw std::domain_error("two_interval_check: ell must be >= 0");
    if (!(b_coef >= 0.0 && b_coef <= 1.0))
        throw std::domain_error("two_interval_check: B must be in [0,1]");
    if (!(0.0 <= x && x <= y)) throw std::domain_error("two_interval_check: need 0 <= x <= y");
    auto phi = [ell](double t) { return std::max(ell * ell - t * t, 0.0); };
    CheckReport rep;
    rep.lhs = phi(b_coef * y - x) - phi(b_coef * y + x);
    rep.rhs = phi(b_coef * x - y) - phi(b_coef * x + y);
    rep.tol = 1e-12 * std::max(1.0, ell * ell);
    rep.holds = rep.lhs >= rep.rhs - rep.tol;
    return rep;
}

namespace {

struct LayerFns {
    double p;      // 1/alpha
    double alpha;
    double B;

    double u(double s) const { return std::pow(1.0 - std::pow(s, p), alpha); }
    // u'(s) = -s^{p-1}(1-s^p)^{alpha-1} because alpha p = 1
    double up(double s) const {
        return -std::pow(s, p - 1.0) * std::pow(1.0 - std::pow(s, p), alpha - 1.0);
    }
    double G(double s) const { return B * u(s) - s; }
    double H(double s) const { return B * u(s) + s; }
    double Gp(double s) const { return B * up(s) - 1.0; }
    double Hp(double s) const { return B * up(s) + 1.0; }
};

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

LayerScenario layer_roots(LayerScenario sc) {
    if (!(sc.alpha > 0.5 && sc.alpha < 1.0))
        throw std::domain_error("layer_roots: alpha must be in (1/2,1)");
    if (!(sc.coefficient > 0.0 && sc.level > 0.0))
        throw std::domain_error("layer_roots: coefficient and level must be positive");
    const LayerFns fn{1.0 / sc.alpha, sc.alpha, sc.coefficient};
    const double B = sc.coefficient, L = sc.level;
    sc.roots.clear();
    sc.active.clear();
    sc.kinds.clear();

    // critical point of H: H'(0) = 1 and H' strictly decreasing to -inf
    const double s_star = bisect([&](double s) { return fn.Hp(s); }, 1e-15, 1.0 - 1e-15);
    const double h_max = fn.H(s_star);
    sc.tangency = std::abs(L - h_max) < 1e-9 || std::abs(L - B) < 1e-9 || std::abs(L - 1.0) < 1e-9;

    if (L < B)  // G strictly decreases from B to -1
        sc.roots.push_back({bisect([&](double s) { return fn.G(s) - L; }, 0.0, 1.0),
                            RootEq::GPlus, 0});
    if (L < 1.0)
        sc.roots.push_back({bisect([&](double s) { return fn.G(s) + L; }, 0.0, 1.0),
                            RootEq::GMinus, 0});
    if (L > B && L < h_max)
        sc.roots.push_back(
            {bisect([&](double s) { return fn.H(s) - L; }, 0.0, s_star), RootEq::H, 0});
    if (L > 1.0 && L < h_max)
        sc.roots.push_back(
            {bisect([&](double s) { return fn.H(s) - L; }, s_star, 1.0), RootEq::H, 1});
    std::sort(sc.roots.begin(), sc.roots.end(),
              [](const LayerRoot& a, const LayerRoot& b) { return a.s < b.s; });

    // active components of {|G| < L < H}, bounded by the roots above
    std::vector<double> cuts = {0.0, 1.0};
    for (const LayerRoot& r : sc.roots) cuts.push_back(r.s);
    std::sort(cuts.begin(), cuts.end());
    auto member = [&](double s) { return std::abs(fn.G(s)) < L && L < fn.H(s); };
    double open = -1.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const bool in = member(0.5 * (cuts[i] + cuts[i + 1]));
        if (in && open < 0.0) open = cuts[i];
        if (!in && open >= 0.0) {
            sc.active.emplace_back(open, cuts[i]);
            open = -1.0;
        }
    }
    if (open >= 0.0) sc.active.emplace_back(open, 1.0);

    for (const auto& comp : sc.active) {
        auto at = [&](double s) -> const LayerRoot* {
            for (const LayerRoot& r : sc.roots)
                if (std::abs(r.s - s) < 1e-11) return &r;
            return nullptr;
        };
        const LayerRoot* lo = at(comp.first);
        const LayerRoot* hi = at(comp.second);
        if (lo && hi && lo->eq == RootEq::GPlus && hi->eq == RootEq::GMinus)
            sc.kinds.push_back(ComponentKind::Central);
        else if (lo && hi && lo->eq == RootEq::H && hi->eq == RootEq::GMinus)
            sc.kinds.push_back(ComponentKind::Mixed);
        else
            sc.kinds.push_back(ComponentKind::Cap);
    }
    return sc;
}

CheckReport wcl_check(const LayerScenario& scenario, const QuadratureSpec& spec) {
    if (!(scenario.exponent >= 3.0 * scenario.alpha - 1e-12))
        throw std::domain_error("wcl_check: delta must be >= 3 alpha");
    LayerScenario sc = scenario;
    if (sc.roots.empty() && sc.active.empty()) sc = layer_roots(sc);
    const LayerFns fn{1.0 / sc.alpha, sc.alpha, sc.coefficient};
    const double d = sc.exponent;

    CheckReport rep;
    for (const LayerRoot& r : sc.roots) {
        const double w = std::pow(1.0 - std::pow(r.s, fn.p), d + sc.alpha);
        const double den = r.eq == RootEq::H ? std::abs(fn.Hp(r.s)) : std::abs(fn.Gp(r.s));
        rep.lhs += sc.level * sc.coefficient * w / den;
    }
    double err = 0.0;
    for (const auto& comp : sc.active) {
        auto f = [&](double s) { return s * std::pow(1.0 - std::pow(s, fn.p), d); };
        const QuadResult q = integrate_adaptive(f, comp.first, comp.second, spec);
        rep.rhs += q.value;
        err += q.err;
    }
    rep.tol = err + 1e-9 * std::max(1.0, rep.lhs);
    rep.holds = rep.lhs >= rep.rhs - rep.tol;
    return rep;
}

DltReport dlt_check(double alpha, double beta, double a_coef, double x_level,
                    const QuadratureSpec& spec) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::domain_error("dlt_check: alpha must be in (1/2,1)");
    if (!(beta >= 1.0 + 2.0 * alpha - 1e-12))
        throw std::domain_error("dlt_check: beta must be >= 1 + 2 alpha");
    if (a_coef < 0.0) throw std::domain_error("dlt_check: A must be >= 0");
    if (!(x_level > 0.0)) throw std::domain_error("dlt_check: x must be > 0");

    DltReport rep;
    if (a_coef == 0.0) {  // right side vanishes
        rep.holds = true;
        return rep;
    }
    const double p = 1.0 / alpha;
    const double expo = beta + alpha - 1.0;

    LayerScenario sc;
    sc.alpha = alpha;
    sc.exponent = expo;
    sc.coefficient = x_level / a_coef;
    sc.level = 1.0 / a_coef;
    sc = layer_roots(sc);
    if (sc.tangency) {  // tangencies are handled by the limiting interpretation
        sc.level *= 1.0 + 1e-9;
        sc = layer_roots(sc);
    }

    // direct route: the roots of h = x, g = x, g = -x coincide with the
    // roots of G = L, H = L, G = -L under B = x/A, L = 1/A
    auto hp = [&](double s) {
        const double sp = std::pow(s, p);
        return std::pow(1.0 - sp, -alpha) *
               (a_coef + (1.0 + a_coef * s) * std::pow(s, p - 1.0) / (1.0 - sp));
    };
    auto gp = [&](double s) {
        const double sp = std::pow(s, p);
        return std::pow(1.0 - sp, -alpha) *
               (-a_coef + (1.0 - a_coef * s) * std::pow(s, p - 1.0) / (1.0 - sp));
    };
    for (const LayerRoot& r : sc.roots) {
        const double w = std::pow(1.0 - std::pow(r.s, p), expo);
        const double den = r.eq == RootEq::GPlus ? std::abs(hp(r.s)) : std::abs(gp(r.s));
        rep.lhs += x_level * w / den;
    }
    double err = 0.0;
    for (const auto& comp : sc.active) {
        auto f = [&](double s) { return s * std::pow(1.0 - std::pow(s, p), expo); };
        const QuadResult q = integrate_adaptive(f, comp.first, comp.second, spec);
        rep.rhs += a_coef * q.value;
        err += a_coef * q.err;
    }
    rep.holds = rep.lhs >= rep.rhs - err - 1e-9 * std::max(1.0, rep.lhs);

    const CheckReport wcl = wcl_check(sc, spec);
    rep.route_gap = std::max(std::abs(rep.lhs - a_coef * wcl.lhs),
                             std::abs(rep.rhs - a_coef * wcl.rhs));
    return rep;
}

SecondDerivReport second_derivative_identity_check(const QuadraticLayerCase& tc, double x,
                                                   const QuadratureSpec& spec) {
    if (!(x > 0.0)) throw std::domain_error("second_derivative_identity_check: x must be > 0");
    QuadratureSpec tight = spec;
    tight.abs_tol = std::min(spec.abs_tol, 1e-13);

    // roots of |L - D| = x and L + D = x by scan + bisection
    auto roots_of = [&](const std::function<double(double)>& f) {
        std::vector<double> out;
        const int grid = 4096;
        double prev = f(tc.r_lo);
        for (int i = 1; i <= grid; ++i) {
            const double r = tc.r_lo + (tc.r_hi - tc.r_lo) * i / grid;
            const double cur = f(r);
            if (prev * cur < 0.0)
                out.push_back(bisect(f, tc.r_lo + (tc.r_hi - tc.r_lo) * (i - 1) / grid, r));
            prev = cur;
        }
        return out;
    };
    auto lmd = [&](double r) { return tc.L(r) - tc.D(r); };
    auto lpd = [&](double r) { return tc.L(r) + tc.D(r); };

    // split the integral at the kinks, where the GK error estimate is unreliable
    auto F = [&](double xx) {
        auto f = [&](double R) {
            const double l = tc.L(R), dd = tc.D(R);
            return tc.W(R) * 0.5 *
                   (std::max(l * l - (xx + dd) * (xx + dd), 0.0) +
                    std::max(l * l - (xx - dd) * (xx - dd), 0.0));
        };
        std::vector<double> cc = {tc.r_lo, tc.r_hi};
        for (double r : roots_of([&](double rr) { return lmd(rr) - xx; })) cc.push_back(r);
        for (double r : roots_of([&](double rr) { return lmd(rr) + xx; })) cc.push_back(r);
        for (double r : roots_of([&](double rr) { return lpd(rr) - xx; })) cc.push_back(r);
        std::sort(cc.begin(), cc.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cc.size(); ++i)
            total += integrate_adaptive(f, cc[i], cc[i + 1], tight).value;
        return total;
    };
    const double q = x * x;
    const double h = q / 50.0;
    auto Gq = [&](double qq) { return F(std::sqrt(qq)); };
    const double g2 = (-Gq(q - 2 * h) + 16.0 * Gq(q - h) - 30.0 * Gq(q) + 16.0 * Gq(q + h) -
                       Gq(q + 2 * h)) /
                      (12.0 * h * h);

    SecondDerivReport rep;
    rep.fd_value = 4.0 * x * x * x * g2;
    double endpoint = 0.0;
    for (double r : roots_of([&](double rr) { return lmd(rr) - x; }))
        endpoint += x * tc.W(r) * tc.L(r) / std::abs(tc.Lp(r) - tc.Dp(r));
    for (double r : roots_of([&](double rr) { return lmd(rr) + x; }))
        endpoint += x * tc.W(r) * tc.L(r) / std::abs(tc.Lp(r) - tc.Dp(r));
    for (double r : roots_of([&](double rr) { return lpd(rr) - x; }))
        endpoint += x * tc.W(r) * tc.L(r) / std::abs(tc.Lp(r) + tc.Dp(r));

    // bulk over {|L-D| < x < L+D}
    std::vector<double> cuts = {tc.r_lo, tc.r_hi};
    for (double r : roots_of([&](double rr) { return lmd(rr) - x; })) cuts.push_back(r);
    for (double r : roots_of([&](double rr) { return lmd(rr) + x; })) cuts.push_back(r);
    for (double r : roots_of([&](double rr) { return lpd(rr) - x; })) cuts.push_back(r);
    std::sort(cuts.begin(), cuts.end());
    double bulk = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (std::abs(lmd(mid)) < x && x < lpd(mid)) {
            auto f = [&](double r) { return tc.W(r) * tc.D(r); };
            bulk += integrate_adaptive(f, cuts[i], cuts[i + 1], tight).value;
        }
    }
    rep.formula_value = endpoint - bulk;
    rep.gap = std::abs(rep.fd_value - rep.formula_value);
    rep.holds = rep.gap <= 1e-6 * std::max(1.0, std::abs(rep.formula_value));
    return rep;
}

namespace {

double law_mean_sq(const DiscreteLaw& law) {
    double m = 0.0;
    for (std::size_t i = 0; i < law.atoms.size(); ++i)
        m += law.probs[i] * law.atoms[i] * law.atoms[i];
    return m;
}

double discrete_lower_stop_loss(const DiscreteLaw& law, double a) {
    double m = 0.0;
    for (std::size_t i = 0; i < law.atoms.size(); ++i)
        m += law.probs[i] * std::max(a - law.atoms[i] * law.atoms[i], 0.0);
    return m;
}

void validate_law(const DiscreteLaw& law) {
    if (law.atoms.empty() || law.atoms.size() != law.probs.size())
        throw std::domain_error("append_lemma_check: malformed discrete law");
    double total = 0.0;
    for (double p : law.probs) {
        if (p < 0.0) throw std::domain_error("append_lemma_check: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::domain_error("append_lemma_check: probabilities must sum to 1");
}

}  // namespace

AppendReport append_lemma_check(double alpha, double beta, double c, const DiscreteLaw& y1,
                                const DiscreteLaw& y2, const QuadratureSpec& spec) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::domain_error("append_lemma_check: alpha must be in (1/2,1)");
    if (!(beta >= 1.0 + 2.0 * alpha - 1e-12))
        throw std::domain_error("append_lemma_check: beta must be >= 1 + 2 alpha");
    if (c < 0.0) throw std::domain_error("append_lemma_check: c must be >= 0");
    validate_law(y1);
    validate_law(y2);

    // exact convex-order validation of the squared input laws: equal means
    // and lower stop-loss dominance at every kink
    if (std::abs(law_mean_sq(y1) - law_mean_sq(y2)) > 1e-10)
        throw std::domain_error("append_lemma_check: squared means differ");
    std::vector<double> kinks;
    for (double a : y1.atoms) kinks.push_back(a * a);
    for (double a : y2.atoms) kinks.push_back(a * a);
    for (double a : kinks)
        if (discrete_lower_stop_loss(y1, a) > discrete_lower_stop_loss(y2, a) + 1e-12)
            throw std::domain_error("append_lemma_check: input laws are not convex-ordered");

    const double log_beta_fn = log_gamma(alpha) + log_gamma(beta) - log_gamma(alpha + beta);
    // t = tau^2 removes the t^{alpha-1} endpoint singularity
    auto big_g = [&](double y, double rho, double& err) {
        auto f = [&](double tau) {
            const double t = tau * tau;
            const double w = 2.0 * std::pow(tau, 2.0 * alpha - 1.0) *
                             std::pow(1.0 - t, beta - 1.0) / std::exp(log_beta_fn);
            const double base = std::pow(1.0 - t, alpha) * std::abs(y);
            const double shift = c * std::pow(t, alpha);
            return w * 0.5 *
                   (std::max(rho * rho - (base + shift) * (base + shift), 0.0) +
                    std::max(rho * rho - (base - shift) * (base - shift), 0.0));
        };
        const QuadResult q = integrate_adaptive(f, 0.0, 1.0, spec);
        err = q.err;
        return q.value;
    };

    double ymax = 0.0;
    for (double a : y1.atoms) ymax = std::max(ymax, std::abs(a));
    for (double a : y2.atoms) ymax = std::max(ymax, std::abs(a));
    const double top = ymax + c + 0.5;

    AppendReport rep;
    rep.worst_margin = 1e300;
    rep.holds = true;
    for (int j = 1; j <= 16; ++j) {
        const double rho = top * j / 16.0;
        double lhs = 0.0, rhs = 0.0, err = 0.0, e = 0.0;
        for (std::size_t i = 0; i < y1.atoms.size(); ++i) {
            lhs += y1.probs[i] * big_g(y1.atoms[i], rho, e);
            err += y1.probs[i] * e;
        }
        for (std::size_t i = 0; i < y2.atoms.size(); ++i) {
            rhs += y2.probs[i] * big_g(y2.atoms[i], rho, e);
            err += y2.probs[i] * e;
        }
        // the margin is exactly zero for rho beyond all kinks, so allow noise
        const double margin = rhs - lhs;
        rep.worst_margin = std::min(rep.worst_margin, margin);
        if (margin < -(err + 1e-9 * std::max(1.0, rho * rho))) rep.holds = false;
    }

    // appending shifts both squared means by the same amount
    const double e1m = std::exp(log_gamma(beta + 2.0 * alpha) + log_gamma(alpha + beta) -
                                log_gamma(beta) - log_gamma(3.0 * alpha + beta));
    rep.moment_shift_gap = std::abs(e1m * (law_mean_sq(y1) - law_mean_sq(y2)));
    return rep;
}

BaseCaseReport base_case_check(double p, const std::vector<double>& phi_grid, double rho,
                               const QuadratureSpec& spec) {
    if (!(p > 1.0 && p < 2.0)) throw std::domain_error("base_case_check: requires 1 < p < 2");
    if (!(rho > 0.0)) throw std::domain_error("base_case_check: rho must be > 0");
    const double alpha = 1.0 / p;
    for (double phi : phi_grid)
        if (phi < -1e-12 || phi > 0.7853981633974484 + 1e-12)
            throw std::domain_error("base_case_check: phi grid must lie in [0, pi/4]");
    QuadratureSpec tight = spec;
    tight.abs_tol = std::min(spec.abs_tol, 1e-12);

    // F(phi) by iterated quadrature; the inner x2 integral is closed-form on
    // the slab |a x1 + b x2| <= rho
    auto F = [&](double phi) {
        const double a = std::cos(phi), b = std::sin(phi);
        auto outer = [&](double x1) {
            const double m = std::pow(1.0 - std::pow(std::abs(x1), p), alpha);
            const double c0 = a * x1;
            if (b < 1e-14)
                return std::max(rho * rho - c0 * c0, 0.0) * 2.0 * m;
            const double lo = std::max((-rho - c0) / b, -m);
            const double hi = std::min((rho - c0) / b, m);
            if (lo >= hi) return 0.0;
            auto anti = [&](double x2) {
                const double w = c0 + b * x2;
                return rho * rho * x2 - w * w * w / (3.0 * b);
            };
            return anti(hi) - anti(lo);
        };
        return integrate_adaptive(outer, -1.0, 1.0, tight);
    };

    // boundary identity for -F'(phi)
    auto minus_fprime = [&](double phi) {
        const double a = std::cos(phi);
        const double B = std::tan(phi);
        const double ell = rho / a;
        auto q = [&](double x, double y) {
            auto cap = [&](double t) { return std::max(ell * ell - t * t, 0.0); };
            return cap(B * y - x) - cap(B * y + x);
        };
        auto f = [&](double t) {
            const double x = std::pow(t, alpha), y = std::pow(1.0 - t, alpha);
            return (std::pow(1.0 - t, 2.0 * alpha - 1.0) - std::pow(t, 2.0 * alpha - 1.0)) *
                   (q(x, y) - q(y, x));
        };
        const QuadResult r = integrate_adaptive(f, 0.0, 0.5, tight);
        return 2.0 * a * a * alpha * r.value;
    };

    BaseCaseReport rep;
    rep.monotone = true;
    rep.boundary_nonnegative = true;
    std::vector<double> phis = phi_grid;
    std::sort(phis.begin(), phis.end());
    double prev = 0.0, prev_err = 0.0;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const QuadResult fr = F(phis[i]);
        rep.f_values.push_back(fr.value);
        if (i > 0 && fr.value > prev + prev_err + fr.err + 1e-10) rep.monotone = false;
        prev = fr.value;
        prev_err = fr.err;
        const double mfp = minus_fprime(phis[i]);
        rep.minus_fprime.push_back(mfp);
        if (mfp < -1e-9) rep.boundary_nonnegative = false;
    }

    // FD consistency at interior grid points (Richardson-refined central diff)
    rep.max_fd_gap = 0.0;
    const double h = 0.02;
    for (double phi : phis) {
        if (phi - h < 0.0 || phi + h > 0.7853981633974484) continue;
        auto central = [&](double hh) {
            return (F(phi + hh).value - F(phi - hh).value) / (2.0 * hh);
        };
        const double fp = (4.0 * central(0.5 * h) - central(h)) / 3.0;
        rep.max_fd_gap = std::max(rep.max_fd_gap, std::abs(-fp - minus_fprime(phi)));
    }
    rep.consistent = rep.max_fd_gap <= 1e-6;
    return rep;
}

}  // namespace lpflow
