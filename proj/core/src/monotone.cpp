// SPDX-License-Identifier: Apache-2.0
#include "wmod/monotone.hpp"

#include <cmath>

#include "wmod/errors.hpp"

namespace wmod {
namespace {

void check_moment_args(int n, double t) {
    if (n < 0 || n > kMaxMomentOrder) {
        throw DomainError("moment order out of range");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("t must be > 0");
    }
}

void merge(IntegrandAudit& into, const IntegrandAudit& from) {
    into.nodes += from.nodes;
    into.negative_nodes += from.negative_nodes;
    if (from.min_hyp_factor < into.min_hyp_factor) {
        into.min_hyp_factor = from.min_hyp_factor;
        into.u_at_min = from.u_at_min;
    }
    into.min_hyp_argument = std::min(into.min_hyp_argument, from.min_hyp_argument);
}

CMVerdict judge(CMCertificate& cert, double abs_tol) {
    for (const auto& e : cert.moments) {
        if (e.value < -std::max(10.0 * e.abs_err, abs_tol)) {
            cert.violation = e;
            return CMVerdict::ViolationFound;
        }
    }
    for (const auto& e : cert.moments) {
        if (!(e.value > std::max(10.0 * e.abs_err, abs_tol))) {
            return CMVerdict::Inconclusive;
        }
    }
    return cert.audit.nonnegative() ? CMVerdict::CertifiedPositive : CMVerdict::Inconclusive;
}

// F at u = -Re x, where the hypergeometric argument takes its minimum
// -(Re x / Im x)^2.
std::optional<double> factor_at_peak(const Hyp2F1Params& hp, const SectorPoint& x, const TolerancePolicy& tol) {
    if (x.real() >= 0.0) {
        return std::nullopt;
    }
    const double r = x.real() / x.imag();
    return hyp2f1_eval(hp, -r * r, tol).real();
}

template <class Params, class Moment>
CMCertificate tabulate(const Params& params, const SectorPoint& x, int n_max, const std::vector<double>& t_grid,
                       Moment&& moment) {
    if (n_max < 0 || n_max > kMaxMomentOrder) {
        throw DomainError("n_max out of range");
    }
    if (t_grid.empty()) {
        throw DomainError("t grid must not be empty");
    }
    CMCertificate cert{params, x, n_max, t_grid, {}, CMVerdict::Inconclusive, std::nullopt, {}, std::nullopt};
    for (int n = 0; n <= n_max; ++n) {
        for (double t : t_grid) {
            const QuadratureResult q = moment(n, t, &cert.audit);
            cert.moments.push_back({n, t, q.value.real(), q.abs_err_estimate});
        }
    }
    return cert;
}

}  // namespace

double theta_from_p(double p) {
    if (!(p < 0.0) || !std::isfinite(p)) {
        throw DomainError("theta_from_p needs finite p < 0");
    }
    return kPi - std::atan(1.0 / std::sqrt(-p));
}

Hyp2F1Params sector_hyp_params(const WhittakerParams& params) {
    params.require_re_k_below_half();
    return Hyp2F1Params::conjugate(0.5 + params.m - params.k, 1.0 - 2.0 * params.k.real());
}

bool real_k_positive_regime(const WhittakerParams& params) noexcept {
    const double k = params.k.real();
    return params.k.imag() == 0.0 && k < 0.5 && k - 0.5 <= params.m && params.m <= 0.5 - k;
}

SectorCertificate sector_certificate(const WhittakerParams& params, double search_floor,
                                     const TolerancePolicy& tol) {
    const Hyp2F1Params hp = sector_hyp_params(params);
    if (real_k_positive_regime(params)) {
        const NegZeroResult none =
            find_largest_negative_zero(hp, search_floor, tol, ZeroSearchMode::AnalyticNegInfinity);
        return {params, none, kPi, true};
    }
    const NegZeroResult p = find_largest_negative_zero(hp, search_floor, tol);
    const double theta = theta_from_p(p.kind == NegZeroKind::Found ? p.p : p.search_floor);
    return {params, p, theta, false};
}

SectorCertificate sector_certificate(const BesselParams& params, double search_floor, const TolerancePolicy& tol) {
    return sector_certificate(WhittakerParams(0.0, params.nu), search_floor, tol);
}

bool in_certified_sector(const SectorCertificate& cert, const SectorPoint& x) noexcept {
    const double arg = std::abs(x.argument());
    return cert.theta_is_exact_pi ? arg < kPi : arg <= cert.theta;
}

const char* to_string(CMVerdict verdict) noexcept {
    switch (verdict) {
        case CMVerdict::CertifiedPositive:
            return "CertifiedPositive";
        case CMVerdict::ViolationFound:
            return "ViolationFound";
        case CMVerdict::Inconclusive:
            break;
    }
    return "Inconclusive";
}

std::vector<double> default_t_grid() { return {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}; }

QuadratureResult cm_moment(const WhittakerParams& params, const SectorPoint& x, int n, double t,
                           const TolerancePolicy& tol, IntegrandAudit* audit) {
    check_moment_args(n, t);
    const ModulusProductParams p(params.k, params.m, x, t);
    return erdelyi_moment(p, n, tol, audit).scaled(x.modulus());
}

QuadratureResult cm_moment(const BesselParams& params, const SectorPoint& x, int n, double t,
                           const TolerancePolicy& tol, IntegrandAudit* audit) {
    check_moment_args(n, t);
    return bessel_moment(params.nu, x, t, n, tol, audit);
}

CMCertificate certify_cm(const WhittakerParams& params, const SectorPoint& x, int n_max,
                         const std::vector<double>& t_grid, const TolerancePolicy& tol) {
    CMCertificate cert = tabulate(params, x, n_max, t_grid, [&](int n, double t, IntegrandAudit* audit) {
        IntegrandAudit local;
        const QuadratureResult q = cm_moment(params, x, n, t, tol, &local);
        merge(*audit, local);
        return q;
    });
    cert.hyp_factor_at_peak = factor_at_peak(sector_hyp_params(params), x, tol);
    cert.verdict = judge(cert, tol.abs_tol);
    return cert;
}

CMCertificate certify_cm(const BesselParams& params, const SectorPoint& x, int n_max,
                         const std::vector<double>& t_grid, const TolerancePolicy& tol) {
    CMCertificate cert = tabulate(params, x, n_max, t_grid, [&](int n, double t, IntegrandAudit* audit) {
        IntegrandAudit local;
        const QuadratureResult q = cm_moment(params, x, n, t, tol, &local);
        merge(*audit, local);
        return q;
    });
    cert.hyp_factor_at_peak = factor_at_peak(sector_hyp_params(WhittakerParams(0.0, params.nu)), x, tol);
    cert.verdict = judge(cert, tol.abs_tol);
    return cert;
}

CMCertificate kmod_cm_check(double nu, const SectorPoint& x, int n_max, const std::vector<double>& t_grid,
                            const TolerancePolicy& tol) {
    if (!x.in_right_half_plane()) {
        throw DomainError("kmod_cm_check needs |arg x| <= pi/2");
    }
    const BesselParams params(nu);
    const double rate = 2.0 * x.real();
    // moments of f(t) = e^{rate t} |K_nu(tx)|^2, computed once per (j, t)
    std::vector<std::vector<QuadratureResult>> f_moments(t_grid.size());
    IntegrandAudit f_audit;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        for (int j = 0; j <= n_max; ++j) {
            f_moments[i].push_back(cm_moment(params, x, j, t_grid[i], tol, &f_audit));
        }
    }
    std::size_t column = 0;
    CMCertificate cert = tabulate(params, x, n_max, t_grid, [&](int n, double t, IntegrandAudit*) {
        // (-1)^n g^{(n)} = e^{-rate t} sum_j C(n,j) rate^{n-j} (-1)^j f^{(j)}
        const auto& row = f_moments[column];
        column = (column + 1) % t_grid.size();
        QuadratureResult sum;
        sum.converged = true;
        double binom = 1.0;
        for (int j = n; j >= 0; --j) {
            sum += row[j].scaled(binom * std::pow(rate, n - j));
            binom = binom * j / (n - j + 1);
        }
        return sum.scaled(std::exp(-rate * t));
    });
    cert.audit = f_audit;
    cert.hyp_factor_at_peak = std::nullopt;
    cert.verdict = judge(cert, tol.abs_tol);
    return cert;
}

}  // namespace wmod
