// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "wmod/erdelyi.hpp"
#include "wmod/hyp2f1.hpp"
#include "wmod/whittaker.hpp"

namespace wmod {

/// Angle in (pi/2, pi) with tan(theta) = -1 / sqrt(-p).
double theta_from_p(double p);

/// The hypergeometric factor F(z) = 2F1(1/2+m-k, 1/2+m-conj k; 1-2 Re k; z)
/// whose largest negative zero fixes the sector.
Hyp2F1Params sector_hyp_params(const WhittakerParams& params);

/// True for real k < 1/2 with k - 1/2 <= m <= 1/2 - k. F then has no
/// negative zero and the sector is the whole cut plane.
bool real_k_positive_regime(const WhittakerParams& params) noexcept;

struct SectorCertificate {
    WhittakerParams params;
    NegZeroResult p;
    double theta;
    /// Set when F has no negative zero for analytic reasons; the sector is
    /// then the open cut plane |arg x| < pi. When the search merely found no
    /// zero above its floor, theta is the angle for the floor and this stays
    /// false.
    bool theta_is_exact_pi;
};

SectorCertificate sector_certificate(const WhittakerParams& params, double search_floor = kDefaultSearchFloor,
                                     const TolerancePolicy& tol = {});
SectorCertificate sector_certificate(const BesselParams& params, double search_floor = kDefaultSearchFloor,
                                     const TolerancePolicy& tol = {});

bool in_certified_sector(const SectorCertificate& cert, const SectorPoint& x) noexcept;

enum class CMVerdict { CertifiedPositive, ViolationFound, Inconclusive };
const char* to_string(CMVerdict verdict) noexcept;

struct MomentEntry {
    int n;
    double t;
    double value;
    double abs_err;
};

struct CMCertificate {
    std::variant<WhittakerParams, BesselParams> params;
    SectorPoint x;
    int n_max;
    std::vector<double> t_grid;
    std::vector<MomentEntry> moments;  // n-major, then t in grid order
    CMVerdict verdict;
    std::optional<MomentEntry> violation;
    IntegrandAudit audit;  // over every node of every moment integral
    /// Hypergeometric factor at its minimising point u = -Re x; empty when
    /// Re x >= 0, where the factor is at least 1.
    std::optional<double> hyp_factor_at_peak;
};

constexpr int kDefaultNMax = 12;
constexpr int kMaxMomentOrder = 40;
std::vector<double> default_t_grid();

/// (-1)^n f^{(n)}(t) for f(t) = t^{-1} e^{t Re x} |W_{k,m}(tx)|^2.
QuadratureResult cm_moment(const WhittakerParams& params, const SectorPoint& x, int n, double t,
                           const TolerancePolicy& tol = {}, IntegrandAudit* audit = nullptr);

/// (-1)^n f^{(n)}(t) for f(t) = e^{2t Re x} |K_nu(tx)|^2.
QuadratureResult cm_moment(const BesselParams& params, const SectorPoint& x, int n, double t,
                           const TolerancePolicy& tol = {}, IntegrandAudit* audit = nullptr);

/// Tabulates the moments over n <= n_max and t_grid. CertifiedPositive
/// needs every moment above max(10 * error, abs_tol) and a nonnegative
/// integrand at every node; a clearly negative moment is a violation; the
/// rest is Inconclusive.
CMCertificate certify_cm(const WhittakerParams& params, const SectorPoint& x, int n_max = kDefaultNMax,
                         const std::vector<double>& t_grid = default_t_grid(), const TolerancePolicy& tol = {});
CMCertificate certify_cm(const BesselParams& params, const SectorPoint& x, int n_max = kDefaultNMax,
                         const std::vector<double>& t_grid = default_t_grid(), const TolerancePolicy& tol = {});

/// Same table for t -> |K_nu(tx)|^2 = e^{-2t Re x} f(t), |arg x| <= pi/2,
/// with derivatives from the Leibniz rule on that product.
CMCertificate kmod_cm_check(double nu, const SectorPoint& x, int n_max = kDefaultNMax,
                            const std::vector<double>& t_grid = default_t_grid(), const TolerancePolicy& tol = {});

}  // namespace wmod
