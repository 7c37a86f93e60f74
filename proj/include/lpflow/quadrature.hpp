#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace lpflow {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_subdivisions = 4000;
};

struct QuadResult {
    double value = 0.0;
    double err = 0.0;  // internal error estimate
};

/// Thrown when the subdivision budget runs out before the tolerance is met.
/// Carries the best estimate obtained so far.
class QuadConvergenceError : public std::runtime_error {
public:
    QuadConvergenceError(double value, double err)
        : std::runtime_error("integrate_adaptive: tolerance not met (best value " +
                             std::to_string(value) + ", err " + std::to_string(err) + ")"),
          best{value, err} {}
    QuadResult best;
};

/// Adaptive Gauss-Kronrod (7-15) over (lo, hi). Bisects the panel with the
/// largest error estimate. hi = +inf and lo = -inf are admitted; infinite
/// ends are mapped through a rational substitution. Integrable endpoint
/// singularities are handled by the bisection cascade.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double lo,
                              double hi, const QuadratureSpec& spec = {});

}  // namespace lpflow
