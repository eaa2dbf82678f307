// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "wmod/quadrature.hpp"

namespace wmod {
namespace {

TEST(TanhSinh, EndpointSingularity) {
    const auto r = tanh_sinh([](double x) { return Complex(std::sqrt(x) * std::log(x), 0.0); }, 0.0, 1.0, 1e-13,
                             1e-15);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value.real(), -4.0 / 9.0, 1e-13);
}

TEST(TanhSinh, ComplexIntegrand) {
    const auto r = tanh_sinh([](double x) { return std::exp(Complex(0.0, 3.0 * x)); }, 0.0, 2.0, 1e-13, 1e-15);
    const Complex exact = (std::exp(Complex(0.0, 6.0)) - 1.0) / Complex(0.0, 3.0);
    EXPECT_LE(std::abs(r.value - exact), 1e-13);
}

TEST(GaussKronrod, SmoothAndPeaked) {
    const auto smooth = gauss_kronrod([](double x) { return Complex(std::sin(x), 0.0); }, 0.0, kPi, 1e-14, 1e-15);
    EXPECT_NEAR(smooth.value.real(), 2.0, 1e-14);
    const double w = 1e-3;
    const auto peak = gauss_kronrod([w](double x) { return Complex(w / (x * x + w * w), 0.0); }, -1.0, 1.0, 1e-12,
                                    1e-15);
    EXPECT_TRUE(peak.converged);
    EXPECT_NEAR(peak.value.real(), 2.0 * std::atan(1.0 / w), 1e-11);
}

TEST(IntegrateTail, ExponentialWithPolynomialGrowth) {
    const auto r = integrate_tail([](double x) { return Complex(x * x * x * x * x * std::exp(-0.5 * x), 0.0); },
                                  0.0, 4.0, 1e-13, 1e-300);
    EXPECT_TRUE(r.converged);
    // int_0^inf x^5 e^{-x/2} dx = 5! * 2^6
    EXPECT_NEAR(r.value.real() / 7680.0, 1.0, 1e-12);
}

TEST(QuadratureResult, Accumulates) {
    QuadratureResult a{{1.0, 0.0}, 1e-3, 10, true};
    const QuadratureResult b{{0.0, 2.0}, 2e-3, 5, false};
    a += b;
    EXPECT_EQ(a.value, Complex(1.0, 2.0));
    EXPECT_EQ(a.nodes_used, 15);
    EXPECT_FALSE(a.converged);
    EXPECT_NEAR(a.scaled(-2.0).abs_err_estimate, 6e-3, 1e-18);
}

}  // namespace
}  // namespace wmod
