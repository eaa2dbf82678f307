// SPDX-License-Identifier: Apache-2.0
#include "wmod/whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wmod/errors.hpp"
#include "wmod/quadrature.hpp"

namespace wmod {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Contour direction for the U integral. Rotating s -> s e^{i phi} keeps
// Re(z e^{i phi}) > 0 and never reaches the branch point s = -1.
double contour_angle(double theta) {
    if (std::abs(theta) <= 0.5 * kPi) {
        return -theta;
    }
    return -std::copysign(0.5 * (std::abs(theta) + 0.5 * kPi), theta);
}

// Peak of log|e^{i phi a} f(r) r| over a log grid of r, f the integrand on
// the ray at angle phi. The integral itself does not depend on phi, so this
// bounds the cancellation the quadrature has to absorb.
double ray_peak(Complex a, Complex b, double theta, double phi, double mod) {
    const Complex q = std::polar(1.0, phi);
    const double rate = mod * std::cos(theta + phi);
    const Complex beta = b - a - 1.0;
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 120; ++i) {
        const double r = std::pow(10.0, -4.0 + 0.05 * i);
        const Complex l1q = std::log(1.0 + q * r);
        const double v = -phi * a.imag() - rate * r + a.real() * std::log(r) + beta.real() * l1q.real() -
                         beta.imag() * l1q.imag();
        peak = std::max(peak, v);
    }
    return peak;
}

struct Ray {
    double phi;
    double peak;
};

// The default angle is fine until |Im a| grows; then 1/Gamma(a) is
// exponentially large and on the default ray the integrand is exponentially
// larger than the integral. Search the admissible wedge for a quieter ray.
Ray steered_ray(Complex a, Complex b, double theta, double mod) {
    const double base = contour_angle(theta);
    Ray best{base, ray_peak(a, b, theta, base, mod)};
    if (std::abs(a.imag()) < 2.0) {
        return best;
    }
    constexpr double kMargin = 0.2;
    const double lo = std::max(-0.5 * kPi - theta, -kPi) + kMargin;
    const double hi = std::min(0.5 * kPi - theta, kPi) - kMargin;
    constexpr int kCandidates = 24;
    for (int i = 0; i <= kCandidates; ++i) {
        const double phi = lo + (hi - lo) * i / kCandidates;
        const double peak = ray_peak(a, b, theta, phi, mod);
        if (peak < best.peak - 1.0) {
            best = Ray{phi, peak};
        }
    }
    return best;
}

// int_0^{s0} s^{a-1} e^{-w s} (1 + q s)^beta ds by termwise integration of
// the Cauchy product of the two power series. Needs s0 <= 1/2, |w| s0 <= 1.
Complex head_series(Complex a, Complex beta, Complex w, Complex q, double s0, int max_terms) {
    std::vector<Complex> ex{Complex(1.0, 0.0)};
    std::vector<Complex> bin{Complex(1.0, 0.0)};
    Complex sum(0.0, 0.0);
    double power = 1.0;
    int small = 0;
    for (int n = 0; n < max_terms; ++n) {
        if (n > 0) {
            const double dn = static_cast<double>(n);
            ex.push_back(ex.back() * (-w) / dn);
            bin.push_back(bin.back() * (beta - (dn - 1.0)) / dn * q);
            power *= s0;
        }
        Complex coef(0.0, 0.0);
        for (int j = 0; j <= n; ++j) {
            coef += ex[j] * bin[n - j];
        }
        const Complex term = coef * power / (a + static_cast<double>(n));
        sum += term;
        if (n > 4 && std::abs(term) <= 0.1 * kEps * std::abs(sum)) {
            if (++small >= 3) {
                return sum * principal_pow(s0, a);
            }
        } else {
            small = 0;
        }
    }
    throw NonConvergence("confluent U head series did not converge");
}

}  // namespace

WhittakerParams::WhittakerParams(Complex k_, double m_) : k(require_finite(k_, "k")), m(require_finite(m_, "m")) {}

void WhittakerParams::require_re_k_below_half() const {
    if (!(k.real() < 0.5)) {
        throw DomainError("Re k must be < 1/2");
    }
}

BesselParams::BesselParams(double nu_) : nu(require_finite(nu_, "nu")) {}

bool within_supported_envelope(const WhittakerParams& params) noexcept {
    return std::abs(params.k.imag()) <= kImKEnvelope;
}

Complex confluent_u(Complex a, Complex b, const SectorPoint& z, const TolerancePolicy& tol) {
    tol.validate();
    require_finite(a, "a");
    require_finite(b, "b");
    z.require_cut_plane();
    if (!(a.real() > 0.0)) {
        throw DomainError("confluent U integral needs Re a > 0");
    }
    const Ray ray = steered_ray(a, b, z.argument(), std::abs(z.value()));
    const double phi = ray.phi;
    const Complex q = std::polar(1.0, phi);
    const Complex w = z.value() * q;
    const double rate = w.real();
    const Complex beta = b - a - 1.0;
    const double rel = std::max(std::min(1e-3 * tol.rel_tol, 1e-13), 1e-14);

    // the binomial series of (1 + q s)^beta grows like |beta s0|^n / n! before
    // it cancels, so large |beta| also shortens the head
    const double s0 = std::min({0.5, 1.0 / std::abs(w), 1.0 / std::abs(beta)});
    Complex integral = head_series(a, beta, w, q, s0, tol.max_series_terms);
    double err = 0.0;
    bool converged = true;

    const Integrand body = [&](double s) {
        return std::exp(-w * s + (a - 1.0) * std::log(s) + beta * std::log(1.0 + q * s));
    };
    // Geometric panels resolve the scale-1 structure of (1 + q s)^beta and
    // the s^{a-1} factor; fixed-width panels then follow the e^{-w s} decay.
    const double reach = std::max(1.0, 8.0 / rate);
    double lo = s0;
    QuadratureResult rest;
    while (lo < reach) {
        const double hi = std::min(2.0 * lo, reach);
        rest += gauss_kronrod(body, lo, hi, rel, 0.0);
        lo = hi;
    }
    rest += integrate_tail(body, lo, 4.0 / rate, rel, 0.0);
    integral += rest.value;
    err += rest.abs_err_estimate;
    converged = converged && rest.converged;

    if (!converged && err > tol.rel_tol * std::abs(integral)) {
        throw NonConvergence("confluent U quadrature did not reach tolerance");
    }
    const Complex rotated = std::exp(Complex(0.0, phi) * a) * integral;
    // roundoff scales with the integrand, not with the (possibly much
    // smaller) integral
    if (50.0 * kEps * std::exp(ray.peak) > tol.rel_tol * std::abs(rotated)) {
        throw NonConvergence("confluent U integral cancels beyond tolerance");
    }
    return rgamma(a) * rotated;
}

Complex whittaker_w(const WhittakerParams& params, const SectorPoint& z, const TolerancePolicy& tol) {
    z.require_cut_plane();
    double m = params.m;
    if (!(0.5 + m - params.k.real() > 0.0)) {
        if (!(0.5 - m - params.k.real() > 0.0)) {
            throw DomainError("W_{k,m} route needs 1/2 + |m| - Re k > 0");
        }
        m = -m;
    }
    const Complex a = 0.5 + m - params.k;
    const Complex u = confluent_u(a, 1.0 + 2.0 * m, z, tol);
    const Complex log_z = std::log(z.value());
    return std::exp(-0.5 * z.value() + (m + 0.5) * log_z) * u;
}

Complex bessel_k(const BesselParams& params, const SectorPoint& z, const TolerancePolicy& tol) {
    const Complex w = whittaker_w(WhittakerParams(0.0, std::abs(params.nu)), z.scaled(2.0), tol);
    return std::sqrt(kPi / (2.0 * z.value())) * w;
}

double whittaker_modulus_sq(const WhittakerParams& params, const SectorPoint& z, const TolerancePolicy& tol) {
    const Complex w = whittaker_w(params, z, tol);
    const Complex mirrored = whittaker_w(WhittakerParams(std::conj(params.k), params.m), z.conj(), tol);
    const double scale = std::abs(w);
    if (std::abs(mirrored - std::conj(w)) > 10.0 * tol.rel_tol * scale) {
        throw NonConvergence("conjugate evaluations of W disagree");
    }
    return scale * scale;
}

}  // namespace wmod
