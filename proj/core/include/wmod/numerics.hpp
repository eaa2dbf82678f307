// SPDX-License-Identifier: Apache-2.0
//
// Complex-arithmetic foundation shared by every module: principal-branch
// powers, the complex gamma family, Pochhammer symbols and the tolerance
// policy that is threaded explicitly through all numerical routines.
#pragma once

#include <complex>
#include <numbers>
#include <string_view>

#include "wmod/errors.hpp"

namespace wmod {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Throws DomainError unless both components of `z` are finite.
Complex require_finite(Complex z, std::string_view what);
double require_finite(double v, std::string_view what);

/// Tolerances used by series, quadrature and root finding.
struct TolerancePolicy {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_series_terms = 10000;
    int max_quad_refinements = 30;

    /// Throws DomainError when any field is nonpositive.
    void validate() const;
};

/// A complex point with cached modulus, real part and principal argument.
class SectorPoint {
public:
    /// Rejects non-finite values and zero. Points on the negative real axis
    /// are accepted with argument pi; use `require_cut_plane` where |arg| < pi
    /// is needed.
    explicit SectorPoint(Complex value);
    static SectorPoint polar(double modulus, double argument);

    Complex value() const noexcept { return value_; }
    double modulus() const noexcept { return modulus_; }
    double real() const noexcept { return value_.real(); }
    double imag() const noexcept { return value_.imag(); }
    double argument() const noexcept { return argument_; }

    bool in_cut_plane() const noexcept { return argument_ < kPi; }
    bool in_right_half_plane() const noexcept;

    /// Throws DomainError if the point lies on (-inf, 0].
    const SectorPoint& require_cut_plane() const;

    SectorPoint conj() const { return SectorPoint(std::conj(value_)); }
    SectorPoint scaled(double factor) const { return SectorPoint(value_ * factor); }

private:
    Complex value_;
    double modulus_;
    double argument_;
};

/// True when `z` lies on the closed cut (-inf, 0].
bool on_negative_axis(Complex z) noexcept;

/// exp(w Log b) with the principal logarithm.
Complex principal_pow(Complex base, Complex exponent);

/// Gamma function; reflection is used for Re z < 1/2.
Complex complex_gamma(Complex z);

/// Principal-ish log Gamma: exp(log_gamma(z)) == complex_gamma(z). The
/// imaginary part is not normalised to a particular branch.
Complex log_gamma(Complex z);

/// 1 / Gamma(z); zero at the poles.
Complex rgamma(Complex z);

/// Digamma function psi(z) = Gamma'(z) / Gamma(z).
Complex digamma(Complex z);

/// Rising factorial (a)_n.
Complex pochhammer(Complex a, int n);

/// True when z is within `tol` of a nonpositive integer.
bool is_nonpositive_integer(Complex z, double tol = 1e-14) noexcept;

}  // namespace wmod
