// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "oracles/sampling.hpp"
#include "oracles/series_oracle.hpp"
#include "wmod/hyp2f1.hpp"

namespace wmod {
namespace {

using testing::hyp2f1_brute_force;

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

TEST(Hyp2F1Params, Validation) {
    EXPECT_THROW(Hyp2F1Params(1.0, 1.0, -2.0), DomainError);
    EXPECT_THROW(Hyp2F1Params(1.0, 1.0, 0.0), DomainError);
    EXPECT_TRUE(Hyp2F1Params(Complex(0.5, 1.0), Complex(0.5, -1.0), 1.0).conjugate_pair);
    EXPECT_FALSE(Hyp2F1Params(Complex(0.5, 1.0), Complex(0.5, 1.0), 1.0).conjugate_pair);
    EXPECT_FALSE(Hyp2F1Params(Complex(0.5, 1.0), Complex(0.5, -1.0), Complex(1.0, 0.1)).conjugate_pair);
}

TEST(Hyp2F1Eval, TrivialCases) {
    const Hyp2F1Params any(Complex(1.3, 0.4), Complex(-0.2, 2.0), 0.7);
    EXPECT_EQ(hyp2f1_eval(any, 0.0), Complex(1.0, 0.0));
    const Hyp2F1Params zero_a(0.0, Complex(2.2, 1.0), 1.5);
    for (double z : {-50.0, -0.3, 0.4, 0.9}) {
        EXPECT_EQ(hyp2f1_eval(zero_a, z), Complex(1.0, 0.0));
    }
    EXPECT_THROW(hyp2f1_eval(any, 1.0), DomainError);
    EXPECT_THROW(hyp2f1_eval(any, 1.5), DomainError);
}

TEST(Hyp2F1Eval, LogarithmClosedForm) {
    // 2F1(1, 1; 2; z) = -log(1 - z) / z
    const Hyp2F1Params p(1.0, 1.0, 2.0);
    for (double z : {0.5, -0.3, 0.8, 0.99, -4.0, -250.0}) {
        const double exact = -std::log1p(-z) / z;
        EXPECT_LE(rel_err(hyp2f1_eval(p, z), exact), 1e-13) << z;
    }
    EXPECT_NEAR(hyp2f1_eval(p, 0.5).real(), 1.3862943611198906188, 1e-14);
}

TEST(Hyp2F1Eval, PaperZeroOfBesselCase) {
    const auto p = Hyp2F1Params::conjugate(2.5, 1.0);
    EXPECT_LT(std::abs(hyp2f1_eval(p, -0.4573617040)), 1e-9);
}

TEST(Hyp2F1Eval, RealLargeNegativeArguments) {
    EXPECT_LE(rel_err(hyp2f1_eval(Hyp2F1Params::conjugate(2.5, 1.0), -30.0), 0.000029951520341067921773), 1e-11);
    EXPECT_LE(rel_err(hyp2f1_eval(Hyp2F1Params::conjugate({0.3, 2.0}, 0.4), -7.5), 0.49062857325312093263), 1e-11);
    EXPECT_LE(rel_err(hyp2f1_eval(Hyp2F1Params::conjugate(1.2, 1.0), -1000.0), -0.000094181984282120698407),
              1e-10);
}

TEST(Hyp2F1Eval, ConjugatePairIsReal) {
    const auto p = Hyp2F1Params::conjugate({0.8, 1.7}, 1.6);
    for (double z : {-80.0, -3.0, -0.7, -0.2, 0.3, 0.6, 0.95, 0.999}) {
        const Complex v = hyp2f1_eval(p, z);
        EXPECT_LE(std::abs(v.imag()), 1e-12 * std::max(1.0, std::abs(v.real()))) << z;
    }
}

// The connection formula near z = 1 is compared with the slowly but surely
// converging power series, including the degenerate (integer c - a - b),
// nearly degenerate and terminating cases.
TEST(Hyp2F1Eval, ConnectionRegionMatchesBruteForce) {
    struct Case {
        Complex a, b, c;
    };
    const Case cases[] = {
        {2.5, 2.5, 1.0},                                   // c - a - b = -4
        {{0.3, 1.0}, {0.7, -1.0}, 1.0},                    // c - a - b = 0
        {{0.3, 1.0}, {0.7, -1.0}, 3.0},                    // c - a - b = 2
        {{0.3, 1.0}, {0.7, -1.0}, 1.00001},                // inside the degenerate band
        {{0.3, 1.0}, {0.7, -1.0}, Complex(1.0002, 1e-4)},  // complex offset in the band
        {{0.3, 1.0}, {0.7, -1.0}, 1.01},                   // just outside the band
        {-3.0, {0.4, 0.2}, 1.5},                           // terminating
        {{1.2, 0.5}, {0.6, -0.9}, 0.35},                   // generic
        {{0.5, 3.0}, {0.5, -3.0}, 0.2},
    };
    for (const auto& cs : cases) {
        const Hyp2F1Params p(cs.a, cs.b, cs.c);
        for (double z : {0.55, 0.7, 0.85, 0.93}) {
            const Complex want = hyp2f1_brute_force(cs.a, cs.b, cs.c, z);
            EXPECT_LE(rel_err(hyp2f1_eval(p, z), want), 1e-11) << cs.a << cs.b << cs.c << " z=" << z;
        }
    }
}

TEST(Hyp2F1GeneralArg, AgreesWithRealPath) {
    const Hyp2F1Params p(Complex(0.7, 0.3), Complex(1.1, -0.5), 0.9);
    for (double z : {-20.0, -0.8, -0.1, 0.2, 0.7, 0.97}) {
        EXPECT_LE(rel_err(hyp2f1_general_arg(p, Complex(z, 0.0)), hyp2f1_eval(p, z)), 1e-15) << z;
    }
    EXPECT_EQ(hyp2f1_general_arg(p, 0.0), Complex(1.0, 0.0));
    EXPECT_THROW(hyp2f1_general_arg(p, Complex(1.0, 0.0)), BranchError);
    EXPECT_THROW(hyp2f1_general_arg(p, Complex(3.0, 0.0)), BranchError);
}

TEST(Hyp2F1GeneralArg, SeriesOracleInsideUnitDisk) {
    const Complex a(0.5, 1.0), b(0.5, -1.0);
    const Complex z(0.3, 0.2);
    const Complex want = hyp2f1_brute_force(a, b, 1.0, z);
    EXPECT_LE(rel_err(want, Complex(1.4057388934080928283, 0.4174933597157497255)), 1e-15);
    EXPECT_LE(rel_err(hyp2f1_general_arg(Hyp2F1Params(a, b, 1.0), z), want), 1e-13);
}

TEST(Hyp2F1GeneralArg, AllRegionsOfTheCutPlane) {
    struct Case {
        Complex a, b, c, z, want;
    };
    const Case cases[] = {
        {{0.5, 1.0}, {0.5, -1.0}, 1.0, {-3.0, 2.0}, {-0.12711098314857156879, 0.11892364742140618312}},
        {{0.3, 0.2}, {1.1, -0.4}, 0.7, {2.0, 1.0}, {-0.089694004749381543064, 0.39051114891157382222}},
        {2.5, 2.5, 1.0, {1.2, 0.9}, {0.86820962013462359387, 6.093432761808422717}},
        // lens region near exp(i pi / 3): Taylor continuation
        {{0.5, 1.0}, {0.5, -1.0}, 1.0, {0.5, 0.85}, {0.58408791824462232798, 1.298660887967635743}},
        {{1.7, 0.3}, {-0.4, 0.1}, 2.2, {-40.0, 0.5}, {3.8804028459331107665, -1.0861051084906160885}},
    };
    for (const auto& cs : cases) {
        const Complex got = hyp2f1_general_arg(Hyp2F1Params(cs.a, cs.b, cs.c), cs.z);
        EXPECT_LE(rel_err(got, cs.want), 1e-11) << cs.z;
    }
}

TEST(Hyp2F1GeneralArg, LensRegionAgainstSeries) {
    testing::Draw draw(77);
    for (int i = 0; i < 20; ++i) {
        const Complex z = std::polar(draw.uniform(0.6, 0.9), draw.uniform(0.5, 1.6));
        const Complex a(draw.uniform(-1, 2), draw.uniform(-1, 1));
        const Complex b(draw.uniform(-1, 2), draw.uniform(-1, 1));
        const Complex c(draw.uniform(0.3, 3), 0.0);
        const Complex want = hyp2f1_brute_force(a, b, c, z);
        EXPECT_LE(rel_err(hyp2f1_general_arg(Hyp2F1Params(a, b, c), z), want), 1e-11) << z;
    }
}

TEST(Hyp2F1GeneralArg, LargeImaginaryParametersAwayFromSeriesDisk) {
    // both connection formulas cancel by several digits here
    const Hyp2F1Params p({1.3, 3.7}, {0.54, 3.83}, {4.18, 7.54});
    const struct {
        Complex z;
        Complex want;
    } cases[] = {
        {{-0.48, -1.46}, {1.337943024726698614, -5.3962427242101634661}},
        {{-0.02, -1.88}, {3.2572599899098766863, -10.701872961519788156}},
        {{0.69, 0.005}, {-0.099751650261873270586, 0.83569994225894662055}},
    };
    for (const auto& c : cases) {
        EXPECT_LE(rel_err(hyp2f1_general_arg(p, c.z), c.want), 1e-12) << c.z;
    }
}

TEST(Hyp2F1Properties, ConjugatePairCoefficientsNonnegative) {
    testing::Draw draw(3);
    for (int i = 0; i < 40; ++i) {
        const Complex k(draw.uniform(-2, 0.49), draw.uniform(-5, 5));
        const double m = draw.uniform(-3, 3);
        const auto p = Hyp2F1Params::conjugate(0.5 + m - k, 1.0 - 2.0 * k.real());
        for (int n = 0; n <= 50; ++n) {
            const Complex coef = hyp2f1_coefficient(p, n);
            EXPECT_GE(coef.real(), 0.0);
            EXPECT_LE(std::abs(coef.imag()), 1e-12 * std::max(1.0, coef.real()));
        }
    }
}

TEST(Hyp2F1Properties, PositiveAndNondecreasingOnUnitInterval) {
    testing::Draw draw(4);
    for (int i = 0; i < 20; ++i) {
        const Complex k(draw.uniform(-2, 0.49), draw.uniform(-5, 5));
        const double m = draw.uniform(-3, 3);
        const Hyp2F1 f(Hyp2F1Params::conjugate(0.5 + m - k, 1.0 - 2.0 * k.real()));
        double prev = 0.0;
        for (double z = 0.0; z < 0.999; z += 0.013) {
            const double v = f(z).real();
            EXPECT_GT(v, 0.0);
            EXPECT_GE(v, prev * (1.0 - 1e-12));
            prev = v;
        }
    }
}

TEST(Hyp2F1Properties, PfaffRoutesAgree) {
    testing::Draw draw(9);
    for (int i = 0; i < 60; ++i) {
        const Complex a(draw.uniform(-2, 4), draw.uniform(-3, 3));
        const Complex b = (i % 2 == 0) ? std::conj(a) : Complex(draw.uniform(-2, 4), draw.uniform(-3, 3));
        const Complex c(draw.uniform(0.1, 5), 0.0);
        const Hyp2F1Params p(a, b, c);
        const double z = -std::exp(draw.uniform(std::log(1e-3), std::log(100.0)));
        const Complex direct = hyp2f1_eval(p, z);
        const Complex pfaff = hyp2f1_via_pfaff(p, z);
        EXPECT_LE(std::abs(direct - pfaff), 1e-10 * std::max(1.0, std::abs(direct))) << a << b << c << z;
    }
}

TEST(LargestNegativeZero, PaperBesselOrderTwo) {
    const auto r = find_largest_negative_zero(Hyp2F1Params::conjugate(2.5, 1.0));
    ASSERT_EQ(r.kind, NegZeroKind::Found);
    EXPECT_NEAR(r.p, -0.4573617040, 1e-9);
    EXPECT_LE(r.bracket.second - r.bracket.first, 1e-12);
    const Hyp2F1 f(Hyp2F1Params::conjugate(2.5, 1.0));
    EXPECT_LE(f(r.bracket.first).real() * f(r.bracket.second).real(), 0.0);
}

TEST(LargestNegativeZero, HalfOrderHasNone) {
    for (double floor : {-1.0, -1e3, -1e6}) {
        const auto r = find_largest_negative_zero(Hyp2F1Params::conjugate(1.0, 1.0), floor);
        EXPECT_EQ(r.kind, NegZeroKind::NoneInSearchRange);
        EXPECT_EQ(r.search_floor, floor);
    }
}

TEST(LargestNegativeZero, OrderOneAgainstDenseScan) {
    const auto params = Hyp2F1Params::conjugate(1.5, 1.0);
    const Hyp2F1 f(params);
    // Oracle: uniform scan at step 1e-3 on [-10, 0) then bisection.
    double hi = 0.0;
    double lo = 0.0;
    for (int j = 1; j <= 10000; ++j) {
        const double z = -1e-3 * j;
        if (f(z).real() <= 0.0) {
            lo = z;
            break;
        }
        hi = z;
    }
    ASSERT_LT(lo, 0.0);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (f(mid).real() <= 0.0 ? lo : hi) = mid;
    }
    const double oracle = 0.5 * (lo + hi);
    EXPECT_NEAR(oracle, -4.75091959742576883658640424507, 1e-9);

    const auto r = find_largest_negative_zero(params);
    ASSERT_EQ(r.kind, NegZeroKind::Found);
    EXPECT_NEAR(r.p, oracle, 2e-12);
}

TEST(LargestNegativeZero, ErrorsAndAnalyticMode) {
    EXPECT_THROW(find_largest_negative_zero(Hyp2F1Params::conjugate(2.5, 1.0), 0.0), DomainError);
    EXPECT_THROW(find_largest_negative_zero(Hyp2F1Params(1.0, 2.0, 1.0)), DomainError);
    const auto r = find_largest_negative_zero(Hyp2F1Params::conjugate(0.7, 0.6), -10.0, {},
                                              ZeroSearchMode::AnalyticNegInfinity);
    EXPECT_EQ(r.kind, NegZeroKind::AnalyticNegInfinity);
}

TEST(LegendreIdentity, Residuals) {
    EXPECT_LT(legendre_identity_check({1.7, -0.3}, 1.0), 1e-15);
    EXPECT_LT(legendre_identity_check(1.0, 0.5), 1e-10);
    EXPECT_LT(legendre_identity_check(2.5, 0.8), 1e-9);
    testing::Draw draw(12);
    for (int i = 0; i < 30; ++i) {
        const Complex a(draw.uniform(-1, 4), draw.uniform(-2, 2));
        EXPECT_LT(legendre_identity_check(a, draw.uniform(0.05, 1.0)), 1e-9);
    }
    EXPECT_THROW(legendre_identity_check(1.0, 0.0), DomainError);
    EXPECT_THROW(legendre_identity_check(1.0, 1.5), DomainError);
}

}  // namespace
}  // namespace wmod
