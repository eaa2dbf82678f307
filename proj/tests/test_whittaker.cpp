// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "oracles/sampling.hpp"
#include "oracles/series_oracle.hpp"
#include "wmod/errors.hpp"
#include "wmod/whittaker.hpp"

namespace wmod {
namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

TEST(WhittakerW, ClosedFormHalfOrder) {
    const WhittakerParams p(0.0, 0.5);
    EXPECT_LE(rel_err(whittaker_w(p, SectorPoint(2.0)), std::exp(-1.0)), 1e-13);
    EXPECT_LE(rel_err(whittaker_w(p, SectorPoint({0.0, 2.0})), std::exp(Complex(0.0, -1.0))), 1e-13);
    const SectorPoint far = SectorPoint::polar(3.0, 2.9);
    EXPECT_LE(rel_err(whittaker_w(p, far), std::exp(-0.5 * far.value())), 1e-13);
}

TEST(WhittakerW, FrozenReferenceValues) {
    struct Case {
        Complex k;
        double m;
        Complex z, want;
    };
    const Case cases[] = {
        {{0.0, 0.3}, 0.7, {1.0, 1.0}, {0.560128159006013682234949163717, -0.196900254629342374306348359705}},
        {{-1.2, 0.5}, 2.3, {3.0, -2.0}, {-0.0826783201290430441405134146753, 0.0248685243312687433820768072588}},
        {0.45, -0.2, {0.05, 0.3}, {0.543219949587752914213777716591, 0.246685202829976459878846467864}},
        {{-0.5, -3.0}, 1.5, {-2.0, 0.8}, {320.60616161168015396151090381, 221.856801447017207335864224875}},
        {0.0, 2.5, {-4.0, -0.5}, {1.70457879108002169949466463156, 0.456910449349854251964099140601}},
    };
    for (const auto& cs : cases) {
        EXPECT_LE(rel_err(whittaker_w(WhittakerParams(cs.k, cs.m), SectorPoint(cs.z)), cs.want), 1e-11) << cs.z;
    }
}

TEST(WhittakerW, KummerSeriesOracle) {
    const Complex oracle = testing::whittaker_w_by_kummer({0.0, 0.3}, 0.7, {1.0, 1.0});
    EXPECT_LE(rel_err(oracle, {0.56012815900601368223, -0.19690025462934237431}), 1e-13);

    testing::Draw draw(31);
    for (int i = 0; i < 60; ++i) {
        const Complex k(draw.uniform(-2.0, 0.49), draw.uniform(-5.0, 5.0));
        double m = draw.uniform(-3.0, 3.0);
        if (std::abs(2.0 * m - std::round(2.0 * m)) < 0.05) {
            m += 0.1;
        }
        const SectorPoint z = SectorPoint::polar(draw.uniform(0.1, 4.0), draw.uniform(-kPi + 0.2, kPi - 0.2));
        double cancellation = 0.0;
        const Complex want = testing::whittaker_w_by_kummer(k, m, z.value(), &cancellation);
        // the oracle's Gamma factors are double precision, so its own error
        // grows with the cancellation between the two series solutions
        EXPECT_LE(rel_err(whittaker_w(WhittakerParams(k, m), z), want), 1e-13 * std::max(1e3, cancellation))
            << "k=" << k << " m=" << m << " z=" << z.value();
    }
}

TEST(WhittakerW, EvenInM) {
    testing::Draw draw(32);
    for (int i = 0; i < 40; ++i) {
        const Complex k(draw.uniform(-2.0, -0.6), draw.uniform(-4.0, 4.0));
        const double m = draw.uniform(0.0, 1.0);  // both orders satisfy 1/2 +- m - Re k > 0
        const SectorPoint z = SectorPoint::polar(draw.uniform(0.1, 8.0), draw.uniform(-3.0, 3.0));
        const Complex plus = whittaker_w(WhittakerParams(k, m), z);
        const Complex minus = whittaker_w(WhittakerParams(k, -m), z);
        EXPECT_LE(rel_err(plus, minus), 1e-10) << k << " " << m << " " << z.value();
    }
}

TEST(WhittakerW, ConjugationSymmetry) {
    testing::Draw draw(33);
    for (int i = 0; i < 40; ++i) {
        const WhittakerParams p({draw.uniform(-2.0, 0.49), draw.uniform(-5.0, 5.0)}, draw.uniform(-3.0, 3.0));
        const SectorPoint z = SectorPoint::polar(draw.uniform(0.1, 10.0), draw.uniform(-3.0, 3.0));
        const Complex w = whittaker_w(p, z);
        const Complex mirrored = whittaker_w(WhittakerParams(std::conj(p.k), p.m), z.conj());
        EXPECT_LE(std::abs(mirrored - std::conj(w)), 1e-12 * std::abs(w));
    }
}

TEST(WhittakerW, LargeImaginaryK) {
    struct Case {
        Complex k;
        double m;
        Complex z, want;
    };
    const Case cases[] = {
        {{0.0, 15.0}, 0.5, 10.0, {81.87198776014367949, -184.71824907289644965}},
        {{0.0, -18.0}, 0.25, {3.0, -4.0}, {-15868.747531480134821, -6396.9924927030408077}},
        {{-0.5, 19.5}, 1.5, {0.2, 2.5}, {-2012536.9876903972961, 1258126.6420811664503}},
    };
    for (const auto& cs : cases) {
        EXPECT_LE(rel_err(whittaker_w(WhittakerParams(cs.k, cs.m), SectorPoint(cs.z)), cs.want), 1e-11) << cs.k;
    }
}

TEST(WhittakerW, LargeImaginaryKAgreesOrReports) {
    // near |arg z| = pi the route can cancel; it must then refuse, not drift
    testing::Draw draw(34);
    int evaluated = 0;
    for (int i = 0; i < 60; ++i) {
        const WhittakerParams p({draw.uniform(-2.0, 0.49), draw.uniform(-20.0, 20.0)}, draw.uniform(-3.0, 3.0));
        const SectorPoint z = SectorPoint::polar(draw.uniform(0.1, 10.0), draw.uniform(-3.0, 3.0));
        try {
            const Complex w = whittaker_w(p, z);
            const Complex mirrored = whittaker_w(WhittakerParams(std::conj(p.k), p.m), z.conj());
            EXPECT_LE(std::abs(mirrored - std::conj(w)), 1e-10 * std::abs(w)) << p.k << " " << z.value();
            ++evaluated;
        } catch (const NonConvergence&) {
        }
    }
    EXPECT_GE(evaluated, 50);
}

TEST(WhittakerW, Domain) {
    EXPECT_THROW(whittaker_w(WhittakerParams(0.0, 0.5), SectorPoint(-1.0)), DomainError);
    EXPECT_THROW(whittaker_w(WhittakerParams(3.0, 0.5), SectorPoint(1.0)), DomainError);
    EXPECT_THROW(WhittakerParams(Complex(std::nan(""), 0.0), 0.5), DomainError);
    EXPECT_THROW(WhittakerParams(0.7, 0.0).require_re_k_below_half(), DomainError);
    EXPECT_TRUE(within_supported_envelope(WhittakerParams({0.0, 20.0}, 1.0)));
    EXPECT_FALSE(within_supported_envelope(WhittakerParams({0.0, -20.5}, 1.0)));
}

TEST(BesselK, ClosedFormAndEvenness) {
    const double want = std::sqrt(kPi / 2.0) * std::exp(-1.0);
    EXPECT_LE(rel_err(bessel_k(BesselParams(0.5), SectorPoint(1.0)), want), 1e-13);
    EXPECT_LE(rel_err(bessel_k(BesselParams(-0.5), SectorPoint(1.0)), want), 1e-13);
    EXPECT_NEAR(want, 0.46106850444789455844, 1e-16);
}

TEST(BesselK, FrozenReferenceValues) {
    EXPECT_LE(rel_err(bessel_k(BesselParams(2.0), SectorPoint({1.0, 1.0})),
                      {-0.35495344133093119744, -0.84156523861025996399}),
              1e-11);
    EXPECT_LE(rel_err(bessel_k(BesselParams(2.0), SectorPoint({-1.0, 0.3})),
                      {0.885189393026829359864941044601, 0.592701800836572116016397932389}),
              1e-11);
    EXPECT_LE(rel_err(bessel_k(BesselParams(0.0), SectorPoint(0.2)), 1.75270385552814585359348502438), 1e-11);
    EXPECT_LE(rel_err(bessel_k(BesselParams(3.5), SectorPoint({10.0, 7.0})),
                      {6.84592492570899263354708089611e-6, -2.32062139393233236752999596657e-5}),
              1e-11);
}

TEST(BesselK, RealAndPositiveOnPositiveAxis) {
    for (double nu : {0.0, 0.3, 1.0, 2.0, 4.5}) {
        for (double x = 0.05; x < 30.0; x *= 1.7) {
            const Complex v = bessel_k(BesselParams(nu), SectorPoint(x));
            EXPECT_GT(v.real(), 0.0);
            EXPECT_LE(std::abs(v.imag()), 1e-14 * v.real());
        }
    }
}

TEST(WhittakerModulusSq, Values) {
    EXPECT_NEAR(whittaker_modulus_sq(WhittakerParams(0.0, 0.5), SectorPoint(2.0)), std::exp(-2.0), 1e-15);
    // real k and positive z give a real W
    const Complex real_w = whittaker_w(WhittakerParams(-0.8, 0.4), SectorPoint(1.3));
    EXPECT_LE(std::abs(real_w.imag()), 1e-15 * std::abs(real_w));
    EXPECT_NEAR(whittaker_modulus_sq(WhittakerParams(-0.8, 0.4), SectorPoint(1.3)), std::norm(real_w),
                1e-14 * std::norm(real_w));
    // imaginary k does not: W_{1.7i,0.4}(1.3) = -0.0204928... + 1.1376698...i
    const Complex imag_w = whittaker_w(WhittakerParams({0.0, 1.7}, 0.4), SectorPoint(1.3));
    EXPECT_LE(rel_err(imag_w, {-0.0204928142531811586685696965965, 1.1376698229742107344589988001}), 1e-11);
    EXPECT_NEAR(whittaker_modulus_sq(WhittakerParams({0.0, 1.7}, 0.4), SectorPoint(1.3)), std::norm(imag_w),
                1e-14 * std::norm(imag_w));
    EXPECT_NEAR(whittaker_modulus_sq(WhittakerParams({0.0, 0.3}, 0.7), SectorPoint({1.0, 1.0})),
                0.35251326478456600962, 1e-12);
}

}  // namespace
}  // namespace wmod
