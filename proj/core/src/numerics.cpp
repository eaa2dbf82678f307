// SPDX-License-Identifier: Apache-2.0
#include "wmod/numerics.hpp"

#include <array>
#include <cmath>
#include <string>

namespace wmod {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLogTwoPi = 0.5 * std::log(2.0 * kPi);

// log Gamma(z) for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
    z -= 1.0;
    Complex series = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
        series += kLanczosCoef[i] / (z + static_cast<double>(i));
    }
    const Complex t = z + kLanczosG + 0.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// log(sin(pi z)), stable for large |Im z|.
Complex log_sin_pi(Complex z) {
    const double y = z.imag();
    if (std::abs(y) < 20.0) {
        return std::log(std::sin(kPi * z));
    }
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; factor out the dominant exponential.
    const Complex i(0.0, 1.0);
    if (y > 0) {
        return -i * kPi * z + std::log(0.5 * i) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
    }
    return i * kPi * z + std::log(-0.5 * i) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

}  // namespace

Complex require_finite(Complex z, std::string_view what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError(std::string(what) + " must be finite");
    }
    return z;
}

double require_finite(double v, std::string_view what) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
    return v;
}

void TolerancePolicy::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("tolerances must be positive");
    }
    if (max_series_terms < 1 || max_quad_refinements < 1) {
        throw DomainError("iteration limits must be at least 1");
    }
}

bool on_negative_axis(Complex z) noexcept { return z.imag() == 0.0 && z.real() <= 0.0; }

SectorPoint::SectorPoint(Complex value) : value_(require_finite(value, "sector point")) {
    modulus_ = std::abs(value_);
    if (!(modulus_ > 0.0)) {
        throw DomainError("sector point must be nonzero");
    }
    argument_ = std::arg(value_);
    if (argument_ == -kPi) {
        argument_ = kPi;
    }
    // The sign of a zero imaginary part must not move a point off the cut.
    if (value_.imag() == 0.0) {
        value_ = Complex(value_.real(), 0.0);
        argument_ = value_.real() > 0 ? 0.0 : kPi;
    }
}

SectorPoint SectorPoint::polar(double modulus, double argument) {
    require_finite(modulus, "modulus");
    require_finite(argument, "argument");
    if (!(modulus > 0.0)) {
        throw DomainError("modulus must be positive");
    }
    if (argument == 0.0) {
        return SectorPoint(Complex(modulus, 0.0));
    }
    return SectorPoint(std::polar(modulus, argument));
}

bool SectorPoint::in_right_half_plane() const noexcept { return std::abs(argument_) <= 0.5 * kPi; }

const SectorPoint& SectorPoint::require_cut_plane() const {
    if (!in_cut_plane()) {
        throw DomainError("point lies on the branch cut (-inf, 0]");
    }
    return *this;
}

Complex principal_pow(Complex base, Complex exponent) {
    require_finite(base, "base");
    require_finite(exponent, "exponent");
    if (base == Complex(0.0, 0.0)) {
        if (exponent.real() > 0.0) {
            return {0.0, 0.0};
        }
        throw DomainError("0 raised to an exponent with nonpositive real part");
    }
    if (on_negative_axis(base)) {
        throw DomainError("principal power base lies on the cut (-inf, 0]");
    }
    return std::exp(exponent * std::log(base));
}

bool is_nonpositive_integer(Complex z, double tol) noexcept {
    if (std::abs(z.imag()) > tol || z.real() > tol) {
        return false;
    }
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

Complex log_gamma(Complex z) {
    require_finite(z, "gamma argument");
    if (is_nonpositive_integer(z, 0.0)) {
        throw PoleError("gamma pole at nonpositive integer");
    }
    if (z.real() < 0.5) {
        return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
    }
    return lanczos_log_gamma(z);
}

Complex complex_gamma(Complex z) {
    require_finite(z, "gamma argument");
    if (is_nonpositive_integer(z, 0.0)) {
        throw PoleError("gamma pole at nonpositive integer");
    }
    if (z.real() < 0.5) {
        if (std::abs(z.imag()) < 20.0) {
            return kPi / (std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)));
        }
        return std::exp(log_gamma(z));
    }
    return std::exp(lanczos_log_gamma(z));
}

Complex rgamma(Complex z) {
    require_finite(z, "gamma argument");
    if (is_nonpositive_integer(z, 0.0)) {
        return {0.0, 0.0};
    }
    if (z.real() < 0.5 && std::abs(z.imag()) < 20.0) {
        return std::sin(kPi * z) * std::exp(lanczos_log_gamma(1.0 - z)) / kPi;
    }
    return std::exp(-log_gamma(z));
}

Complex digamma(Complex z) {
    require_finite(z, "digamma argument");
    if (is_nonpositive_integer(z, 0.0)) {
        throw PoleError("digamma pole at nonpositive integer");
    }
    Complex acc(0.0, 0.0);
    if (z.real() < 0.5) {
        acc -= kPi / std::tan(kPi * z);
        z = 1.0 - z;
    }
    while (z.real() < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // Asymptotic series with Bernoulli numbers B_2 .. B_14.
    const Complex inv2 = 1.0 / (z * z);
    const Complex tail =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 -
                                inv2 * (1.0 / 240.0 -
                                        inv2 * (1.0 / 132.0 -
                                                inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    return acc + std::log(z) - 0.5 / z - tail;
}

Complex pochhammer(Complex a, int n) {
    if (n < 0) {
        throw DomainError("pochhammer order must be nonnegative");
    }
    Complex result(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        result *= a + static_cast<double>(i);
    }
    return result;
}

}  // namespace wmod
