// SPDX-License-Identifier: Apache-2.0
//
// Laplace-transform representations of products of Whittaker functions.
// For real m and Re k < 1/2,
//
//   (t|x|)^{-1} e^{t Re x} |W_{k,m}(tx)|^2
//     = |x|^{2m} / Gamma(1 - 2 Re k) * int_0^inf e^{-tu} g(u) du,
//
//   g(u) = |(x+u)^{k-1/2-m}|^2 u^{-2 Re k}
//          * 2F1(1/2+m-k, 1/2+m-conj(k); 1-2 Re k; u(2 Re x + u)/|x+u|^2).
#pragma once

#include <limits>

#include "wmod/numerics.hpp"
#include "wmod/quadrature.hpp"

namespace wmod {

struct ModulusProductParams {
    Complex k;
    double m;
    SectorPoint x;
    double t;

    ModulusProductParams(Complex k_, double m_, SectorPoint x_, double t_);
};

struct GeneralProductParams {
    Complex k;
    Complex l;
    Complex m;
    SectorPoint x;
    SectorPoint y;
    double t;

    GeneralProductParams(Complex k_, Complex l_, Complex m_, SectorPoint x_, SectorPoint y_, double t_);
};

/// Observations of the hypergeometric factor at every quadrature node.
struct IntegrandAudit {
    int nodes = 0;
    int negative_nodes = 0;
    double min_hyp_factor = std::numeric_limits<double>::infinity();
    double u_at_min = 0.0;
    double min_hyp_argument = std::numeric_limits<double>::infinity();

    bool nonnegative() const noexcept { return negative_nodes == 0; }
};

/// u(2 Re x + u) / |x + u|^2, always < 1.
double hyp_argument(const SectorPoint& x, double u);

/// u(x + y + u) / ((x + u)(y + u)).
Complex hyp_argument_general(const SectorPoint& x, const SectorPoint& y, double u);

/// Right-hand side of the modulus identity, prefactor included.
QuadratureResult erdelyi_rhs_modulus(const ModulusProductParams& params, const TolerancePolicy& tol = {},
                                     IntegrandAudit* audit = nullptr);

/// Same integral with the extra weight u^n. With f(t) the left-hand side
/// times |x|, (-1)^n f^{(n)}(t) = |x| * erdelyi_moment(params, n).
QuadratureResult erdelyi_moment(const ModulusProductParams& params, int n, const TolerancePolicy& tol = {},
                                IntegrandAudit* audit = nullptr);

/// Right-hand side of the general product formula, with the prefactor taken
/// as x^m y^m (principal powers). Throws BranchError if the hypergeometric
/// argument meets [1, inf) along the path.
QuadratureResult erdelyi_rhs_general(const GeneralProductParams& params, const TolerancePolicy& tol = {});

/// e^{2t Re x} |K_nu(tx)|^2 as a Laplace integral.
QuadratureResult bessel_rhs(double nu, const SectorPoint& x, double t, const TolerancePolicy& tol = {},
                            IntegrandAudit* audit = nullptr);

/// (-1)^n d^n/dt^n of e^{2t Re x} |K_nu(tx)|^2.
QuadratureResult bessel_moment(double nu, const SectorPoint& x, double t, int n, const TolerancePolicy& tol = {},
                               IntegrandAudit* audit = nullptr);

// Left-hand sides through direct evaluation of W and K.

/// (t|x|)^{-1} e^{t Re x} |W_{k,m}(tx)|^2.
double modulus_lhs(const ModulusProductParams& params, const TolerancePolicy& tol = {});

/// t^{-1} x^{-1/2} y^{-1/2} e^{t(x+y)/2} W_{k,m}(tx) W_{l,m}(ty); needs real m.
Complex general_lhs(const GeneralProductParams& params, const TolerancePolicy& tol = {});

/// e^{2t Re x} |K_nu(tx)|^2.
double bessel_lhs(double nu, const SectorPoint& x, double t, const TolerancePolicy& tol = {});

}  // namespace wmod
