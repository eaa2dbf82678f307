// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles/sampling.hpp"
#include "oracles/series_oracle.hpp"
#include "wmod/numerics.hpp"

namespace wmod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(PrincipalPow, UnitBase) {
    EXPECT_EQ(principal_pow({1.0, 0.0}, {2.7, -1.3}), Complex(1.0, 0.0));
}

TEST(PrincipalPow, PositiveRealIsReal) {
    const Complex v = principal_pow({2.5, 0.0}, {1.7, 0.0});
    EXPECT_NEAR(v.real(), std::pow(2.5, 1.7), 1e-14);
    EXPECT_EQ(v.imag(), 0.0);
}

TEST(PrincipalPow, ImaginaryUnitSquared) {
    const Complex v = principal_pow({0.0, 1.0}, {2.0, 0.0});
    EXPECT_NEAR(v.real(), -1.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(PrincipalPow, RejectsCut) {
    EXPECT_THROW(principal_pow({-2.0, 0.0}, {0.5, 0.0}), DomainError);
    EXPECT_THROW(principal_pow({0.0, 0.0}, {-0.5, 0.0}), DomainError);
    EXPECT_THROW(principal_pow({kInf, 0.0}, {0.5, 0.0}), DomainError);
    EXPECT_EQ(principal_pow({0.0, 0.0}, {0.5, 0.3}), Complex(0.0, 0.0));
}

TEST(PrincipalPow, ExponentAdditivity) {
    testing::Draw draw(11);
    for (int i = 0; i < 200; ++i) {
        const Complex base = std::polar(draw.uniform(0.1, 10.0), draw.uniform(-3.1, 3.1));
        const Complex w1(draw.uniform(-3, 3), draw.uniform(-3, 3));
        const Complex w2(draw.uniform(-3, 3), draw.uniform(-3, 3));
        const Complex lhs = principal_pow(base, w1 + w2);
        const Complex rhs = principal_pow(base, w1) * principal_pow(base, w2);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
    }
}

TEST(ComplexGamma, KnownValues) {
    EXPECT_NEAR(std::abs(complex_gamma(1.0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(complex_gamma(0.5).real(), std::sqrt(kPi), 1e-14);
    EXPECT_NEAR(complex_gamma(5.0).real(), 24.0, 1e-12);
    EXPECT_NEAR(complex_gamma(-0.5).real(), -2.0 * std::sqrt(kPi), 1e-13);
}

TEST(ComplexGamma, OnePlusIAgainstEulerIntegral) {
    const Complex oracle = testing::gamma_by_integral({1.0, 1.0});
    // Frozen reference: 0.49801566811835604271 - 0.15494982830181068512 i.
    EXPECT_NEAR(oracle.real(), 0.49801566811835604271, 1e-14);
    EXPECT_NEAR(oracle.imag(), -0.15494982830181068512, 1e-14);
    const Complex g = complex_gamma({1.0, 1.0});
    EXPECT_LE(std::abs(g - oracle), 1e-13 * std::abs(oracle));
}

TEST(ComplexGamma, PolesRaise) {
    EXPECT_THROW(complex_gamma(0.0), PoleError);
    EXPECT_THROW(complex_gamma(-3.0), PoleError);
    EXPECT_EQ(rgamma(-2.0), Complex(0.0, 0.0));
}

TEST(ComplexGamma, RecurrenceAndConjugation) {
    testing::Draw draw(2024);
    int checked = 0;
    while (checked < 100) {
        const Complex z(draw.uniform(-10, 10), draw.uniform(-10, 10));
        if (std::abs(z) > 10.0) {
            continue;
        }
        // keep away from the poles of both Gamma(z) and Gamma(z + 1)
        if (z.real() < 0.5 && std::abs(z.imag()) < 0.1 &&
            std::abs(z.real() - std::round(z.real())) < 0.1) {
            continue;
        }
        const Complex g = complex_gamma(z);
        const Complex g1 = complex_gamma(z + 1.0);
        EXPECT_LE(std::abs(g1 - z * g), 1e-10 * std::abs(g1)) << z;
        EXPECT_LE(std::abs(complex_gamma(std::conj(z)) - std::conj(g)), 1e-13 * std::abs(g)) << z;
        ++checked;
    }
}

TEST(ComplexGamma, LogGammaAgreesAndReciprocal) {
    for (Complex z : {Complex(0.3, 25.0), Complex(-4.2, 0.7), Complex(12.0, -3.0), Complex(0.01, 5.0)}) {
        const Complex g = complex_gamma(z);
        EXPECT_LE(std::abs(std::exp(log_gamma(z)) - g), 1e-12 * std::abs(g)) << z;
        EXPECT_LE(std::abs(rgamma(z) * g - 1.0), 1e-12) << z;
    }
}

TEST(Digamma, RecurrenceAndKnownValues) {
    EXPECT_NEAR(digamma(1.0).real(), -0.57721566490153286, 1e-14);
    EXPECT_NEAR(digamma(0.5).real(), -0.57721566490153286 - 2.0 * std::log(2.0), 1e-14);
    testing::Draw draw(5);
    for (int i = 0; i < 50; ++i) {
        const Complex z(draw.uniform(-6, 6), draw.uniform(0.2, 6));
        EXPECT_LE(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z), 1e-12 * (1.0 + std::abs(digamma(z))));
    }
}

TEST(Pochhammer, Values) {
    EXPECT_EQ(pochhammer({3.3, -1.0}, 0), Complex(1.0, 0.0));
    EXPECT_EQ(pochhammer(1.0, 6), Complex(720.0, 0.0));
    const Complex a(0.5, 1.0);
    const Complex direct = a * (a + 1.0) * (a + 2.0);
    EXPECT_LE(std::abs(pochhammer(a, 3) - direct), 1e-14);
    EXPECT_NEAR(direct.real(), -2.625, 1e-14);
    EXPECT_NEAR(direct.imag(), 4.75, 1e-14);
}

TEST(SectorPoint, CachesPolarData) {
    const SectorPoint p(Complex(-1.0, 1.0));
    EXPECT_NEAR(p.modulus(), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(p.argument(), 0.75 * kPi, 1e-15);
    EXPECT_FALSE(p.in_right_half_plane());
    EXPECT_TRUE(p.in_cut_plane());

    const SectorPoint neg(Complex(-2.0, -0.0));
    EXPECT_EQ(neg.argument(), kPi);
    EXPECT_THROW(neg.require_cut_plane(), DomainError);
    EXPECT_THROW(SectorPoint(Complex(0.0, 0.0)), DomainError);
    EXPECT_THROW(SectorPoint(Complex(std::nan(""), 0.0)), DomainError);
}

TEST(TolerancePolicy, Validates) {
    TolerancePolicy tol;
    EXPECT_NO_THROW(tol.validate());
    tol.rel_tol = 0.0;
    EXPECT_THROW(tol.validate(), DomainError);
    tol = {};
    tol.max_series_terms = 0;
    EXPECT_THROW(tol.validate(), DomainError);
}

}  // namespace
}  // namespace wmod
