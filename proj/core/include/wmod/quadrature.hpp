// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "wmod/numerics.hpp"

namespace wmod {

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double abs_err_estimate = 0.0;
    int nodes_used = 0;
    bool converged = false;

    QuadratureResult& operator+=(const QuadratureResult& other);
    QuadratureResult scaled(Complex factor) const;
};

using Integrand = std::function<Complex(double)>;

/// Double-exponential rule on [a, b]. Nodes cluster at both endpoints, so
/// bounded integrands with endpoint kinks or sharp endpoint peaks converge
/// quickly. Levels halve the step until successive sums agree.
QuadratureResult tanh_sinh(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                           int max_levels = 10);

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b].
QuadratureResult gauss_kronrod(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                               int max_subdivisions = 200);

/// Integral over [start, inf) for integrands with eventual exponential decay.
/// Panels of width `panel_width` are added in order until `quiet_panels`
/// consecutive panels each fall below rel_tol * |accumulated|; the panel
/// order is fixed so results are reproducible.
QuadratureResult integrate_tail(const Integrand& f, double start, double panel_width, double rel_tol,
                                double abs_tol, int max_panels = 2000, int quiet_panels = 3);

}  // namespace wmod
