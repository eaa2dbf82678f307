// SPDX-License-Identifier: Apache-2.0
//
// Gauss hypergeometric function 2F1(a, b; c; z) for complex parameters.
//
// Real arguments z < 1 are the main use: the direct series covers |z| <= 1/2,
// the 1 - z connection formula covers (1/2, 1), and the Pfaff transformation
// z -> z/(z - 1) maps z < -1/2 into (1/3, 1). The general complex argument
// additionally uses Taylor continuation of the hypergeometric ODE along a
// ray from the origin in the lens regions near exp(+-i pi/3).
#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wmod/numerics.hpp"

namespace wmod {

struct Hyp2F1Params {
    Complex a;
    Complex b;
    Complex c;
    /// b == conj(a) and c real; then F is real on the real axis.
    bool conjugate_pair = false;

    /// Rejects non-finite parameters and c at a nonpositive integer.
    /// `conjugate_pair` is detected from the values.
    Hyp2F1Params(Complex a, Complex b, Complex c);

    /// (a, conj(a); c) with the conjugate-pair flag set.
    static Hyp2F1Params conjugate(Complex a, double c);
};

namespace detail {
struct ConnectionAtOne;
}

/// Evaluator bound to one parameter triple. Gamma-function prefactors of the
/// connection formulas are computed once at construction, so repeated
/// evaluation at many arguments (quadrature nodes) is cheap. Immutable after
/// construction and safe to share between threads.
class Hyp2F1 {
public:
    explicit Hyp2F1(const Hyp2F1Params& params, const TolerancePolicy& tol = {});
    ~Hyp2F1();
    Hyp2F1(Hyp2F1&&) noexcept;
    Hyp2F1& operator=(Hyp2F1&&) noexcept;

    /// F(z) for real z < 1. Throws DomainError for z >= 1.
    Complex operator()(double z) const;
    /// Principal branch for z in the plane cut along [1, inf). Throws
    /// BranchError on the cut.
    Complex operator()(Complex z) const;

    /// As above, with 1 - z supplied by the caller. Use when 1 - z is known
    /// to better relative accuracy than z itself, e.g. z close to 1.
    Complex at(double z, double one_minus_z) const;
    Complex at(Complex z, Complex one_minus_z) const;

    const Hyp2F1Params& params() const noexcept { return params_; }

private:
    Complex eval_real(double z, double one_minus_z) const;
    Complex eval_complex(Complex z, Complex one_minus_z) const;
    Complex continue_along_ray(Complex z) const;

    Hyp2F1Params params_;
    TolerancePolicy tol_;
    std::optional<int> degree_;  // set when a or b is a nonpositive integer
    std::unique_ptr<detail::ConnectionAtOne> direct_conn_;  // (a, b; c) near z = 1
    std::unique_ptr<detail::ConnectionAtOne> pfaff_conn_;   // (a, c - b; c) near w = 1
};

/// F(z) for real z < 1.
Complex hyp2f1_eval(const Hyp2F1Params& params, double z, const TolerancePolicy& tol = {});

/// Principal-branch F(z) for z in C \ [1, inf).
Complex hyp2f1_general_arg(const Hyp2F1Params& params, Complex z, const TolerancePolicy& tol = {});

/// F(z) for real z < 0 computed through the b-leading Pfaff transformation
/// (1 - z)^{-b} F(c - a, b; c; z/(z - 1)). The evaluator itself uses the
/// a-leading form, so the two routes share no parameter triple.
Complex hyp2f1_via_pfaff(const Hyp2F1Params& params, double z, const TolerancePolicy& tol = {});

/// Partial sums of the defining power series; the term ratio is applied
/// exactly as written. Requires |z| < 1.
Complex hyp2f1_series(const Hyp2F1Params& params, Complex z, const TolerancePolicy& tol = {});

/// Coefficient (a)_n (b)_n / ((c)_n n!) of z^n.
Complex hyp2f1_coefficient(const Hyp2F1Params& params, int n);

enum class NegZeroKind { Found, NoneInSearchRange, AnalyticNegInfinity };

struct NegZeroResult {
    NegZeroKind kind = NegZeroKind::NoneInSearchRange;
    double p = 0.0;                // Found only
    std::pair<double, double> bracket{0.0, 0.0};  // Found only
    double search_floor = 0.0;
    /// Scan points above p (or above the floor) where F was checked positive.
    int grid_points_checked = 0;
};

enum class ZeroSearchMode {
    Scan,
    /// The caller has established p = -inf analytically; no search is run.
    AnalyticNegInfinity,
};

inline constexpr double kDefaultSearchFloor = -1e6;

/// Largest negative zero of F for a conjugate pair with c > 0.
///
/// Geometric scan z_j = -g r^j (g = 1e-3, r = 1.25) from just below 0 down to
/// `search_floor`; the first sign change is refined by bisection to 1e-12.
/// Largest-ness is evidenced by the scan grid only.
NegZeroResult find_largest_negative_zero(const Hyp2F1Params& params, double search_floor = kDefaultSearchFloor,
                                         const TolerancePolicy& tol = {},
                                         ZeroSearchMode mode = ZeroSearchMode::Scan);

/// |F(a, a; 1; 1 - z) - z^{-a} P_{-a}(2/z - 1)| with the Legendre function
/// evaluated as F(a, 1 - a; 1; 1 - 1/z). Requires z in (0, 1].
double legendre_identity_check(Complex a, double z, const TolerancePolicy& tol = {});

}  // namespace wmod
