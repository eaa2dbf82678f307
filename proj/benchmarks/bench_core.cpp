// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "wmod/bounds.hpp"
#include "wmod/erdelyi.hpp"
#include "wmod/hyp2f1.hpp"
#include "wmod/monotone.hpp"
#include "wmod/whittaker.hpp"

namespace {

using namespace wmod;

// z = -0.3, -3, -30, -300 exercise the series, Pfaff and connection routes
void BM_Hyp2F1Real(benchmark::State& state) {
    const Hyp2F1Params p = Hyp2F1Params::conjugate(Complex(0.8, 1.7), 2.4);
    const double z = -0.3 * std::pow(10.0, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyp2f1_eval(p, z));
    }
}
BENCHMARK(BM_Hyp2F1Real)->DenseRange(0, 3);

void BM_Hyp2F1Complex(benchmark::State& state) {
    const Hyp2F1Params p(Complex(1.3, 3.7), Complex(0.54, 3.83), Complex(4.18, 7.54));
    const Complex z(-0.48, -1.46);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyp2f1_general_arg(p, z));
    }
}
BENCHMARK(BM_Hyp2F1Complex);

void BM_ZeroSearch(benchmark::State& state) {
    const Hyp2F1Params p = Hyp2F1Params::conjugate(2.5, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_largest_negative_zero(p));
    }
}
BENCHMARK(BM_ZeroSearch)->Unit(benchmark::kMicrosecond);

// arg z = 0, 1.5, 2.9
void BM_WhittakerW(benchmark::State& state) {
    const WhittakerParams p(Complex(0.0, 0.3), 0.7);
    const SectorPoint z = SectorPoint::polar(2.0, 0.1 * static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(whittaker_w(p, z));
    }
}
BENCHMARK(BM_WhittakerW)->Arg(0)->Arg(15)->Arg(29)->Unit(benchmark::kMicrosecond);

void BM_WhittakerLargeImK(benchmark::State& state) {
    const WhittakerParams p(Complex(0.0, static_cast<double>(state.range(0))), 0.5);
    const SectorPoint z(Complex(3.0, 1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(whittaker_w(p, z));
    }
}
BENCHMARK(BM_WhittakerLargeImK)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_ModulusRhs(benchmark::State& state) {
    const ModulusProductParams p(Complex(0.0, 0.3), 0.7, SectorPoint(Complex(1.0, 1.0)), 1.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(erdelyi_rhs_modulus(p));
    }
}
BENCHMARK(BM_ModulusRhs)->Unit(benchmark::kMicrosecond);

void BM_GeneralRhs(benchmark::State& state) {
    const GeneralProductParams p(0.1, 0.2, 0.3, SectorPoint(1.0), SectorPoint(2.0), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(erdelyi_rhs_general(p));
    }
}
BENCHMARK(BM_GeneralRhs)->Unit(benchmark::kMicrosecond);

void BM_Moment(benchmark::State& state) {
    const SectorPoint x = SectorPoint::polar(1.0, 2.0);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cm_moment(BesselParams(2.0), x, n, 1.0));
    }
}
BENCHMARK(BM_Moment)->Arg(0)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_WhittakerBound(benchmark::State& state) {
    const WhittakerParams p(Complex(0.0, 0.4), 1.3);
    const SectorPoint x(Complex(1.0, 0.5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(whittaker_bound(p, x, 3.0));
    }
}
BENCHMARK(BM_WhittakerBound)->Unit(benchmark::kMicrosecond);

void BM_CertifyCm(benchmark::State& state) {
    const SectorPoint x = SectorPoint::polar(1.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(certify_cm(BesselParams(2.0), x, 10));
    }
}
BENCHMARK(BM_CertifyCm)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
