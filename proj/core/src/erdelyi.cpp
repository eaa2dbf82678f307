// SPDX-License-Identifier: Apache-2.0
#include "wmod/erdelyi.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wmod/errors.hpp"
#include "wmod/hyp2f1.hpp"
#include "wmod/whittaker.hpp"

namespace wmod {
namespace {

// Integrates u^{-rho} body(u) over (0, inf), where body carries the e^{-tu}
// factor. The first piece uses u = b s^{1/(1-rho)}, which turns u^{-rho} du
// into a constant multiple of ds. Interior breakpoints mark peaks of body;
// tanh-sinh clusters nodes at them. Beyond `reach` fixed-width panels follow
// the exponential decay. Pieces are summed in a fixed order.
QuadratureResult integrate_laplace(const Integrand& body, double rho, double t, std::vector<double> breaks,
                                   double reach, const TolerancePolicy& tol) {
    const double c = 1.0 - rho;
    const double rel = 0.01 * tol.rel_tol;
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> edges;
    for (double b : breaks) {
        if (b > 0.0 && b < reach && (edges.empty() || b > edges.back())) {
            edges.push_back(b);
        }
    }
    edges.push_back(reach);

    const double head_end = edges.front();
    const Integrand head = [&](double s) {
        const double u = head_end * std::pow(s, 1.0 / c);
        return body(u);
    };
    QuadratureResult total = tanh_sinh(head, 0.0, 1.0, rel, 0.0).scaled(std::pow(head_end, c) / c);

    const Integrand weighted = [&](double u) { return std::pow(u, -rho) * body(u); };
    for (std::size_t i = 1; i < edges.size(); ++i) {
        total += tanh_sinh(weighted, edges[i - 1], edges[i], rel, 0.0);
    }
    total += integrate_tail(weighted, reach, 2.0 / t, rel, 0.0);
    return total;
}

// Sets the converged flag against rel_tol. Only an error estimate above
// sqrt(rel_tol) is treated as failure: when the hypergeometric factor changes
// sign the integral is a difference of larger pieces, and its accuracy is
// limited by that of the factor rather than by the rule.
void finish(QuadratureResult& result, const TolerancePolicy& tol) {
    const double size = std::abs(result.value);
    result.converged = result.abs_err_estimate <= std::max(tol.abs_tol, tol.rel_tol * size);
    if (result.abs_err_estimate > std::max(tol.abs_tol, std::sqrt(tol.rel_tol) * size)) {
        throw NonConvergence("Laplace-integral quadrature did not reach tolerance");
    }
}

QuadratureResult modulus_integral(const ModulusProductParams& p, int n, const TolerancePolicy& tol,
                                  IntegrandAudit* audit) {
    tol.validate();
    if (n < 0) {
        throw DomainError("moment order must be >= 0");
    }
    const double c = 1.0 - 2.0 * p.k.real();
    const Hyp2F1 hyp(Hyp2F1Params::conjugate(0.5 + p.m - p.k, c), tol);
    const double xr = p.x.real();
    const double xi = p.x.imag();
    const double mod_sq = p.x.modulus() * p.x.modulus();
    const double power = 2.0 * (p.k.real() - 0.5 - p.m);
    const double twist = -2.0 * p.k.imag();

    const Integrand body = [&](double u) -> Complex {
        if (n > 0 && u == 0.0) {
            return 0.0;
        }
        const double re = xr + u;
        const double dist_sq = re * re + xi * xi;
        const double zeta = u * (2.0 * xr + u) / dist_sq;
        const double f = hyp.at(zeta, mod_sq / dist_sq).real();
        if (audit != nullptr) {
            ++audit->nodes;
            if (f < 0.0) {
                ++audit->negative_nodes;
            }
            if (f < audit->min_hyp_factor) {
                audit->min_hyp_factor = f;
                audit->u_at_min = u;
            }
            audit->min_hyp_argument = std::min(audit->min_hyp_argument, zeta);
        }
        double log_mag = -p.t * u + 0.5 * power * std::log(dist_sq) + twist * std::atan2(xi, re);
        if (n > 0) {
            log_mag += n * std::log(u);
        }
        return std::exp(log_mag) * f;
    };
    const double reach = std::max(1.0, p.x.modulus());
    QuadratureResult result = integrate_laplace(body, 2.0 * p.k.real(), p.t, {-xr}, reach, tol);
    const double log_pre = 2.0 * p.m * std::log(p.x.modulus()) - std::lgamma(c);
    result = result.scaled(std::exp(log_pre));
    result.value = Complex(result.value.real(), 0.0);
    finish(result, tol);
    return result;
}

// Scans the hypergeometric argument along the path and reports a crossing
// of [1, inf) between neighbouring samples or a sample on it.
void monitor_branch(const SectorPoint& x, const SectorPoint& y, double t, double abs_tol) {
    const double last = 50.0 / t + 2.0 * (x.modulus() + y.modulus());
    Complex prev = 0.0;
    double u = 0.0;
    const double ratio = 1.01;
    double step = 1e-6;
    while (u < last) {
        u += step;
        step = std::min(step * ratio, 0.01 * std::max(1.0, x.modulus() + y.modulus()));
        const Complex zeta = hyp_argument_general(x, y, u);
        if (std::abs(zeta.imag()) <= abs_tol && zeta.real() >= 1.0 - abs_tol) {
            throw BranchError("hypergeometric argument meets [1, inf) on the integration path");
        }
        if ((prev.imag() < 0.0 && zeta.imag() > 0.0) || (prev.imag() > 0.0 && zeta.imag() < 0.0)) {
            const double w = prev.imag() / (prev.imag() - zeta.imag());
            const double crossing = prev.real() + w * (zeta.real() - prev.real());
            if (crossing >= 1.0) {
                throw BranchError("hypergeometric argument crosses [1, inf) on the integration path");
            }
        }
        prev = zeta;
    }
}

}  // namespace

ModulusProductParams::ModulusProductParams(Complex k_, double m_, SectorPoint x_, double t_)
    : k(require_finite(k_, "k")), m(require_finite(m_, "m")), x(x_), t(require_finite(t_, "t")) {
    if (!(k.real() < 0.5)) {
        throw DomainError("Re k must be < 1/2");
    }
    x.require_cut_plane();
    if (!(t > 0.0)) {
        throw DomainError("t must be > 0");
    }
}

GeneralProductParams::GeneralProductParams(Complex k_, Complex l_, Complex m_, SectorPoint x_, SectorPoint y_,
                                           double t_)
    : k(require_finite(k_, "k")),
      l(require_finite(l_, "l")),
      m(require_finite(m_, "m")),
      x(x_),
      y(y_),
      t(require_finite(t_, "t")) {
    if (!((1.0 - k - l).real() > 0.0)) {
        throw DomainError("Re(1 - k - l) must be > 0");
    }
    x.require_cut_plane();
    y.require_cut_plane();
    if (!(t > 0.0)) {
        throw DomainError("t must be > 0");
    }
}

double hyp_argument(const SectorPoint& x, double u) {
    if (!(u >= 0.0)) {
        throw DomainError("u must be >= 0");
    }
    const double re = x.real() + u;
    return u * (2.0 * x.real() + u) / (re * re + x.imag() * x.imag());
}

Complex hyp_argument_general(const SectorPoint& x, const SectorPoint& y, double u) {
    return u * (x.value() + y.value() + u) / ((x.value() + u) * (y.value() + u));
}

QuadratureResult erdelyi_rhs_modulus(const ModulusProductParams& params, const TolerancePolicy& tol,
                                     IntegrandAudit* audit) {
    return modulus_integral(params, 0, tol, audit);
}

QuadratureResult erdelyi_moment(const ModulusProductParams& params, int n, const TolerancePolicy& tol,
                                IntegrandAudit* audit) {
    return modulus_integral(params, n, tol, audit);
}

QuadratureResult erdelyi_rhs_general(const GeneralProductParams& p, const TolerancePolicy& tol) {
    tol.validate();
    monitor_branch(p.x, p.y, p.t, tol.abs_tol);
    const Complex c = 1.0 - p.k - p.l;
    const Hyp2F1 hyp(Hyp2F1Params(0.5 + p.m - p.k, 0.5 + p.m - p.l, c), tol);
    const Complex x = p.x.value();
    const Complex y = p.y.value();
    const double rho = (p.k + p.l).real();
    const double spin = (p.k + p.l).imag();

    const Integrand body = [&](double u) -> Complex {
        const Complex xu = x + u;
        const Complex yu = y + u;
        const Complex zeta = u * (x + y + u) / (xu * yu);
        const Complex f = hyp.at(zeta, x * y / (xu * yu));
        Complex log_val = -p.t * u + (p.k - 0.5 - p.m) * std::log(xu) + (p.l - 0.5 - p.m) * std::log(yu);
        if (u > 0.0) {
            log_val -= Complex(0.0, spin * std::log(u));
        }
        return std::exp(log_val) * f;
    };
    const double reach = std::max({1.0, p.x.modulus(), p.y.modulus()});
    QuadratureResult result = integrate_laplace(body, rho, p.t, {-p.x.real(), -p.y.real()}, reach, tol);
    // x^m y^m rather than (xy)^m: the two differ by e^{2 pi i m} once
    // |arg x + arg y| > pi, and only the split product matches the left side
    result = result.scaled(principal_pow(x, p.m) * principal_pow(y, p.m) * rgamma(c));
    finish(result, tol);
    return result;
}

QuadratureResult bessel_rhs(double nu, const SectorPoint& x, double t, const TolerancePolicy& tol,
                            IntegrandAudit* audit) {
    return bessel_moment(nu, x, t, 0, tol, audit);
}

QuadratureResult bessel_moment(double nu, const SectorPoint& x, double t, int n, const TolerancePolicy& tol,
                               IntegrandAudit* audit) {
    const ModulusProductParams p(0.0, nu, x.scaled(2.0), t);
    return modulus_integral(p, n, tol, audit).scaled(kPi);
}

double modulus_lhs(const ModulusProductParams& p, const TolerancePolicy& tol) {
    const double w_sq = whittaker_modulus_sq(WhittakerParams(p.k, p.m), p.x.scaled(p.t), tol);
    return std::exp(p.t * p.x.real()) * w_sq / (p.t * p.x.modulus());
}

Complex general_lhs(const GeneralProductParams& p, const TolerancePolicy& tol) {
    if (p.m.imag() != 0.0) {
        throw DomainError("direct evaluation of W needs real m");
    }
    const double m = p.m.real();
    const Complex wx = whittaker_w(WhittakerParams(p.k, m), p.x.scaled(p.t), tol);
    const Complex wy = whittaker_w(WhittakerParams(p.l, m), p.y.scaled(p.t), tol);
    // split for the same reason as the x^m y^m factor on the right
    const Complex pre = 1.0 / (p.t * std::sqrt(p.x.value()) * std::sqrt(p.y.value()));
    return pre * std::exp(0.5 * p.t * (p.x.value() + p.y.value())) * wx * wy;
}

double bessel_lhs(double nu, const SectorPoint& x, double t, const TolerancePolicy& tol) {
    if (!(t > 0.0)) {
        throw DomainError("t must be > 0");
    }
    const Complex kv = bessel_k(BesselParams(nu), x.scaled(t), tol);
    return std::exp(2.0 * t * x.real()) * std::norm(kv);
}

}  // namespace wmod
