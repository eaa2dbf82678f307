// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wmod/numerics.hpp"

namespace wmod {

struct WhittakerParams {
    Complex k;
    double m = 0.0;

    WhittakerParams(Complex k_, double m_);
    /// Throws DomainError unless Re k < 1/2.
    void require_re_k_below_half() const;
};

struct BesselParams {
    double nu = 0.0;

    explicit BesselParams(double nu_);
};

/// Largest |Im k| for which the integral route is considered well
/// conditioned. Beyond it values are still returned but callers should
/// surface a quality warning.
constexpr double kImKEnvelope = 20.0;
bool within_supported_envelope(const WhittakerParams& params) noexcept;

/// Tricomi's confluent hypergeometric U(a, b, z), Re a > 0, |arg z| < pi.
Complex confluent_u(Complex a, Complex b, const SectorPoint& z, const TolerancePolicy& tol = {});

/// W_{k,m}(z) for |arg z| < pi. Uses the order -m when 1/2 + m - Re k <= 0.
Complex whittaker_w(const WhittakerParams& params, const SectorPoint& z, const TolerancePolicy& tol = {});

/// K_nu(z) = sqrt(pi / (2z)) W_{0,nu}(2z).
Complex bessel_k(const BesselParams& params, const SectorPoint& z, const TolerancePolicy& tol = {});

/// |W_{k,m}(z)|^2. Also evaluates W_{conj k, m}(conj z) and throws
/// NonConvergence if the two disagree beyond tolerance.
double whittaker_modulus_sq(const WhittakerParams& params, const SectorPoint& z, const TolerancePolicy& tol = {});

}  // namespace wmod
