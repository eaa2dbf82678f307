// SPDX-License-Identifier: Apache-2.0
#include "wmod/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmod/erdelyi.hpp"
#include "wmod/errors.hpp"
#include "wmod/sampling.hpp"

namespace wmod {
namespace {

void check_hypotheses(const SectorPoint& x, double tau) {
    x.require_cut_plane();
    if (!x.in_right_half_plane()) {
        throw DomainError("quotient bounds need |arg x| <= pi/2");
    }
    if (!(tau >= 1.0) || !std::isfinite(tau)) {
        throw DomainError("tau must be >= 1");
    }
}

BoundReport make_report(double numerator, double denominator, double bound) {
    BoundReport r;
    r.bound = bound;
    if (!(denominator >= kUnderflowGuard) || !std::isfinite(denominator) || !std::isfinite(numerator)) {
        r.status = BoundStatus::Unverifiable;
        r.quotient_sq = std::numeric_limits<double>::quiet_NaN();
        r.slack = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.quotient_sq = numerator / denominator;
    r.slack = bound - r.quotient_sq;
    r.holds = r.quotient_sq <= bound * (1.0 + kBoundSlack);
    r.status = r.holds ? BoundStatus::Holds : BoundStatus::Violated;
    return r;
}

}  // namespace

BoundQuery::BoundQuery(std::variant<WhittakerParams, BesselParams> params_, SectorPoint x_, double tau_)
    : params(std::move(params_)), x(x_), tau(tau_) {
    check_hypotheses(x, tau);
    if (const auto* w = std::get_if<WhittakerParams>(&params)) {
        w->require_re_k_below_half();
    }
}

const char* to_string(BoundStatus status) noexcept {
    switch (status) {
        case BoundStatus::Holds:
            return "Holds";
        case BoundStatus::Violated:
            return "Violated";
        case BoundStatus::Unverifiable:
            break;
    }
    return "Unverifiable";
}

double whittaker_bound_value(const SectorPoint& x, double tau) { return tau * std::exp((1.0 - tau) * x.real()); }

double bessel_bound_value(const SectorPoint& x, double tau) { return std::exp(2.0 * (1.0 - tau) * x.real()); }

BoundReport whittaker_bound(const WhittakerParams& params, const SectorPoint& x, double tau,
                            const TolerancePolicy& tol) {
    check_hypotheses(x, tau);
    params.require_re_k_below_half();
    const double den = whittaker_modulus_sq(params, x, tol);
    const double num = tau == 1.0 ? den : whittaker_modulus_sq(params, x.scaled(tau), tol);
    return make_report(num, den, whittaker_bound_value(x, tau));
}

BoundReport bessel_bound(double nu, const SectorPoint& x, double tau, const TolerancePolicy& tol) {
    check_hypotheses(x, tau);
    const BesselParams params(nu);
    const double den = std::norm(bessel_k(params, x, tol));
    const double num = tau == 1.0 ? den : std::norm(bessel_k(params, x.scaled(tau), tol));
    return make_report(num, den, bessel_bound_value(x, tau));
}

BoundReport evaluate_bound(const BoundQuery& query, const TolerancePolicy& tol) {
    if (const auto* w = std::get_if<WhittakerParams>(&query.params)) {
        return whittaker_bound(*w, query.x, query.tau, tol);
    }
    return bessel_bound(std::get<BesselParams>(query.params).nu, query.x, query.tau, tol);
}

LaplaceMonotonicity laplace_monotonicity(const WhittakerParams& params, const SectorPoint& x, double tau,
                                         const TolerancePolicy& tol) {
    check_hypotheses(x, tau);
    const double one = erdelyi_rhs_modulus(ModulusProductParams(params.k, params.m, x, 1.0), tol).value.real();
    const double at_tau =
        tau == 1.0 ? one : erdelyi_rhs_modulus(ModulusProductParams(params.k, params.m, x, tau), tol).value.real();
    return {one, at_tau, at_tau <= one * (1.0 + kBoundSlack)};
}

void BoundSweepConfig::validate() const {
    const auto ordered = [](std::pair<double, double> r) { return std::isfinite(r.first) && r.first <= r.second; };
    if (!ordered(re_k) || !ordered(m) || !ordered(modulus) || !ordered(tau)) {
        throw DomainError("sweep ranges must be finite with lo <= hi");
    }
    if (re_k.second >= 0.5 && family == SweepFamily::Whittaker) {
        throw DomainError("sweep needs Re k < 1/2");
    }
    if (!(modulus.first > 0.0) || !(tau.first >= 1.0) || !(max_abs_im_k >= 0.0) ||
        !(max_abs_arg >= 0.0 && max_abs_arg <= 0.5 * kPi)) {
        throw DomainError("sweep samples must satisfy the bound hypotheses");
    }
}

std::vector<BoundSample> bound_sweep(const BoundSweepConfig& config, const TolerancePolicy& tol) {
    config.validate();
    std::vector<std::optional<BoundSample>> slots(config.samples);
    parallel_for(config.samples, config.threads, [&](std::size_t i) {
        SampleStream draw(config.seed, i);
        const bool whittaker = config.family == SweepFamily::Whittaker;
        Complex k = 0.0;
        if (whittaker) {
            k = Complex(draw.uniform(config.re_k.first, config.re_k.second),
                        draw.uniform(-config.max_abs_im_k, config.max_abs_im_k));
        }
        const double m = draw.uniform(config.m.first, config.m.second);
        const SectorPoint x = SectorPoint::polar(draw.uniform(config.modulus.first, config.modulus.second),
                                                 draw.uniform(-config.max_abs_arg, config.max_abs_arg));
        const double tau = draw.uniform(config.tau.first, config.tau.second);
        BoundSample s{i, k, m, x, tau, {}, std::nullopt};
        if (whittaker) {
            const WhittakerParams p(k, m);
            s.report = whittaker_bound(p, x, tau, tol);
            if (config.laplace_check) {
                s.laplace = laplace_monotonicity(p, x, tau, tol);
            }
        } else {
            s.report = bessel_bound(m, x, tau, tol);
        }
        slots[i] = s;
    });
    std::vector<BoundSample> out;
    out.reserve(slots.size());
    for (auto& s : slots) {
        out.push_back(*s);
    }
    return out;
}

BoundSweepSummary summarize(const std::vector<BoundSample>& samples) {
    BoundSweepSummary sum;
    sum.samples = samples.size();
    sum.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        switch (s.report.status) {
            case BoundStatus::Violated:
                ++sum.violations;
                break;
            case BoundStatus::Unverifiable:
                ++sum.unverifiable;
                break;
            case BoundStatus::Holds:
                break;
        }
        if (std::isfinite(s.report.slack)) {
            sum.min_slack = std::min(sum.min_slack, s.report.slack);
        }
        if (s.laplace && !s.laplace->holds) {
            ++sum.laplace_violations;
        }
    }
    if (samples.empty()) {
        sum.min_slack = 0.0;
    }
    return sum;
}

}  // namespace wmod
