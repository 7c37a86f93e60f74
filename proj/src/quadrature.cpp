#include "lpflow/quadrature.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace lpflow {

namespace {

// QUADPACK dqk15 abscissae/weights (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double lo, hi, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double fv[15];
    fv[7] = f(c);
    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        fv[j] = f(c - x);
        fv[14 - j] = f(c + x);
        const double fsum = fv[j] + fv[14 - j];
        kronrod += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    // dqk15 error estimate with the resasc rescaling
    const double reskh = kronrod * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = kronrod * h;
    double err = std::abs(kronrod - gauss) * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);
    p.err = std::isfinite(err) ? err : std::abs(kronrod - gauss) * std::abs(h);
    return p;
}

QuadResult adaptive_finite(const std::function<double(double)>& f, double lo,
                           double hi, const QuadratureSpec& spec) {
    std::priority_queue<Panel> panels;
    panels.push(gk15(f, lo, hi));
    double total = panels.top().value;
    double total_err = panels.top().err;
    int used = 1;
    while (true) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_err <= tol) break;
        if (used >= spec.max_subdivisions) throw QuadConvergenceError(total, total_err);
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi))  // panel can no longer split
            throw QuadConvergenceError(total, total_err);
        Panel a = gk15(f, worst.lo, mid);
        Panel b = gk15(f, mid, worst.hi);
        total += a.value + b.value - worst.value;
        total_err += a.err + b.err - worst.err;
        panels.push(a);
        panels.push(b);
        ++used;
    }
    return {total, total_err};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                              double hi, const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || spec.rel_tol < 0.0 || spec.max_subdivisions < 1)
        throw std::domain_error("integrate_adaptive: invalid QuadratureSpec");
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (lo_inf && hi_inf) {
        // x = u/(1-u^2), u in (-1, 1); f must vanish at the endpoints
        auto g = [&f](double u) {
            const double d = (1.0 - u) * (1.0 + u);
            const double fx = f(u / d);
            if (fx == 0.0) return 0.0;
            return fx * (1.0 + u * u) / (d * d);
        };
        return adaptive_finite(g, -1.0, 1.0, spec);
    }
    if (hi_inf) {
        // x = lo + u/(1-u), u in (0, 1)
        auto g = [&f, lo](double u) {
            const double d = 1.0 - u;
            const double fx = f(lo + u / d);
            if (fx == 0.0) return 0.0;
            return fx / (d * d);
        };
        return adaptive_finite(g, 0.0, 1.0, spec);
    }
    if (lo_inf) {
        auto g = [&f, hi](double u) {
            const double d = 1.0 - u;
            const double fx = f(hi - u / d);
            if (fx == 0.0) return 0.0;
            return fx / (d * d);
        };
        return adaptive_finite(g, 0.0, 1.0, spec);
    }
    if (lo == hi) return {0.0, 0.0};
    return adaptive_finite(f, lo, hi, spec);
}

}  // namespace lpflow
