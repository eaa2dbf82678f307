// SPDX-License-Identifier: Apache-2.0
//
// Quotient bounds for x in the closed right half-plane and tau >= 1:
//   |W_{k,m}(tau x) / W_{k,m}(x)|^2 <= tau e^{(1-tau) Re x}    (Re k < 1/2, m real)
//   |K_nu(tau x) / K_nu(x)|^2       <= e^{2(1-tau) Re x}
// Neither bound depends on k, m or nu.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "wmod/numerics.hpp"
#include "wmod/whittaker.hpp"

namespace wmod {

/// Relative allowance for evaluation error when deciding whether a bound holds.
constexpr double kBoundSlack = 1e-9;
/// Denominators |W(x)|^2 below this make the quotient unverifiable.
constexpr double kUnderflowGuard = 1e-280;

struct BoundQuery {
    std::variant<WhittakerParams, BesselParams> params;
    SectorPoint x;
    double tau;

    BoundQuery(std::variant<WhittakerParams, BesselParams> params_, SectorPoint x_, double tau_);
};

enum class BoundStatus { Holds, Violated, Unverifiable };
const char* to_string(BoundStatus status) noexcept;

struct BoundReport {
    double quotient_sq = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // bound - quotient_sq
    bool holds = false;
    BoundStatus status = BoundStatus::Unverifiable;
};

/// The right-hand sides only; equal for every (k, m) or nu.
double whittaker_bound_value(const SectorPoint& x, double tau);
double bessel_bound_value(const SectorPoint& x, double tau);

BoundReport whittaker_bound(const WhittakerParams& params, const SectorPoint& x, double tau,
                            const TolerancePolicy& tol = {});
BoundReport bessel_bound(double nu, const SectorPoint& x, double tau, const TolerancePolicy& tol = {});
BoundReport evaluate_bound(const BoundQuery& query, const TolerancePolicy& tol = {});

/// The intermediate inequality of the argument: the Laplace integral for
/// (t|x|)^{-1} e^{t Re x} |W_{k,m}(tx)|^2 is no larger at t = tau than at t = 1.
struct LaplaceMonotonicity {
    double at_one;
    double at_tau;
    bool holds;  // at_tau <= at_one * (1 + kBoundSlack)
};
LaplaceMonotonicity laplace_monotonicity(const WhittakerParams& params, const SectorPoint& x, double tau,
                                         const TolerancePolicy& tol = {});

enum class SweepFamily { Whittaker, Bessel };

struct BoundSweepConfig {
    SweepFamily family = SweepFamily::Whittaker;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::pair<double, double> re_k{-2.0, 0.49};
    double max_abs_im_k = 5.0;
    std::pair<double, double> m{-3.0, 3.0};  // also the range of nu
    std::pair<double, double> modulus{0.1, 5.0};
    double max_abs_arg = 0.5 * kPi;
    std::pair<double, double> tau{1.0, 20.0};
    bool laplace_check = false;  // Whittaker family only
    unsigned threads = 1;

    void validate() const;
};

struct BoundSample {
    std::size_t index;
    Complex k;  // zero for the Bessel family
    double m;   // nu for the Bessel family
    SectorPoint x;
    double tau;
    BoundReport report;
    std::optional<LaplaceMonotonicity> laplace;
};

struct BoundSweepSummary {
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::size_t unverifiable = 0;
    std::size_t laplace_violations = 0;
    double min_slack = 0.0;
};

/// Samples are generated and stored by index; the output order does not
/// depend on the thread count.
std::vector<BoundSample> bound_sweep(const BoundSweepConfig& config, const TolerancePolicy& tol = {});
BoundSweepSummary summarize(const std::vector<BoundSample>& samples);

}  // namespace wmod
