// SPDX-License-Identifier: Apache-2.0
#include "wmod/hyp2f1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace wmod {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Distance below which c - a - b is treated as the integer it rounds to.
constexpr double kIntegerSnap = 1e-13;
// Half-width of the band around an integer c - a - b where the standard
// connection formula is replaced by interpolation in c.
constexpr double kDegenerateBand = 1e-3;

struct SeriesOutcome {
    Complex sum;
    double magnitude;  // sum of |terms|, for the cancellation estimate
    bool converged;
};

SeriesOutcome series_tracked(Complex a, Complex b, Complex c, Complex z, int max_terms) {
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    double magnitude = 1.0;
    int small = 0;
    for (int n = 0; n < max_terms; ++n) {
        const double dn = static_cast<double>(n);
        const Complex ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        term *= ratio;
        sum += term;
        magnitude += std::abs(term);
        if (term == Complex(0.0, 0.0)) {
            return {sum, magnitude, true};
        }
        if (std::abs(term) <= 0.25 * kEps * std::abs(sum) && std::abs(ratio) < 1.0) {
            if (++small >= 2) {
                return {sum, magnitude, true};
            }
        } else {
            small = 0;
        }
    }
    return {sum, magnitude, false};
}

Complex series_sum(Complex a, Complex b, Complex c, Complex z, const TolerancePolicy& tol) {
    const auto out = series_tracked(a, b, c, z, tol.max_series_terms);
    if (!out.converged) {
        throw NonConvergence("2F1 power series did not converge within max_series_terms");
    }
    return out.sum;
}

// Largest |z| at which the direct series is tried before the expansion about 1.
constexpr double kSeriesReach = 0.9;
// Largest accepted cancellation ratio, sum |terms| / |sum|, for that series
// and for the two-term connection formulas. Beyond it the ODE continuation
// is used instead.
constexpr double kSeriesCancellation = 64.0;

std::optional<int> terminating_degree(Complex a, Complex b) {
    std::optional<int> degree;
    for (Complex p : {a, b}) {
        if (is_nonpositive_integer(p, 1e-14)) {
            const int d = static_cast<int>(-std::round(p.real()));
            if (!degree || d < *degree) {
                degree = d;
            }
        }
    }
    return degree;
}

Complex polynomial_sum(Complex a, Complex b, Complex c, int degree, Complex z) {
    Complex sum(1.0, 0.0);
    Complex term(1.0, 0.0);
    for (int n = 0; n < degree; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
    }
    return sum;
}

Complex harmonic(int n) {
    double h = 0.0;
    for (int j = 1; j <= n; ++j) {
        h += 1.0 / j;
    }
    return {h, 0.0};
}

}  // namespace

namespace detail {

// F(a, b; c; 1 - w) for |w| <= 1/2 through the connection formulas at z = 1.
struct ConnectionAtOne {
    enum class Kind { Polynomial, Standard, Logarithmic, Interpolated };

    ConnectionAtOne(Complex a_in, Complex b_in, Complex c_in, const TolerancePolicy& tol_in)
        : a(a_in), b(b_in), c(c_in), tol(tol_in) {
        if (auto d = terminating_degree(a, b)) {
            kind = Kind::Polynomial;
            degree = *d;
            return;
        }
        s = c - a - b;
        const double nearest = std::round(s.real());
        const double dist = std::abs(s - nearest);
        if (dist < kIntegerSnap) {
            setup_logarithmic(static_cast<int>(nearest));
        } else if (dist < kDegenerateBand) {
            setup_interpolated(static_cast<int>(nearest));
        } else {
            kind = Kind::Standard;
            k1 = complex_gamma(c) * complex_gamma(s) * rgamma(c - a) * rgamma(c - b);
            k2 = complex_gamma(c) * complex_gamma(-s) * rgamma(a) * rgamma(b);
        }
    }

    /// `cancellation`, when given, receives (|first| + |second|) / |sum| for
    /// the two-term formula and 1 otherwise.
    Complex operator()(Complex w, double* cancellation = nullptr) const {
        if (cancellation) {
            *cancellation = 1.0;
        }
        switch (kind) {
            case Kind::Polynomial:
                return polynomial_sum(a, b, c, degree, 1.0 - w);
            case Kind::Standard: {
                const Complex first = k1 * series_sum(a, b, 1.0 - s, w, tol);
                const Complex second = k2 * std::exp(s * std::log(w)) * series_sum(c - a, c - b, 1.0 + s, w, tol);
                if (cancellation) {
                    *cancellation = (std::abs(first) + std::abs(second)) / std::abs(first + second);
                }
                return first + second;
            }
            case Kind::Logarithmic:
                return logarithmic(w);
            case Kind::Interpolated: {
                Complex v(0.0, 0.0);
                for (std::size_t j = 0; j < nodes.size(); ++j) {
                    v += lagrange[j] * nodes[j]->operator()(w);
                }
                return v;
            }
        }
        return {};
    }

    void setup_logarithmic(int n) {
        kind = Kind::Logarithmic;
        // c = a + b - n reduces to c = a' + b' + n by Euler's transformation.
        if (n < 0) {
            euler = true;
            la = c - a;
            lb = c - b;
            ln = -n;
        } else {
            la = a;
            lb = b;
            ln = n;
        }
        if (auto d = terminating_degree(la, lb)) {
            log_polynomial_degree = *d;
            return;
        }
        gamma_c = complex_gamma(c);
        r_finite = rgamma(la + static_cast<double>(ln)) * rgamma(lb + static_cast<double>(ln));
        r_log = rgamma(la) * rgamma(lb);
        psi_a = digamma(la + static_cast<double>(ln));
        psi_b = digamma(lb + static_cast<double>(ln));
        // (a)_k (b)_k (n - k - 1)! / k!
        finite_coef.resize(static_cast<std::size_t>(ln));
        Complex poch(1.0, 0.0);
        double kfact = 1.0;
        for (int k = 0; k < ln; ++k) {
            double nk = 1.0;
            for (int j = 2; j <= ln - k - 1; ++j) {
                nk *= j;
            }
            finite_coef[static_cast<std::size_t>(k)] = poch * nk / kfact;
            poch *= (la + static_cast<double>(k)) * (lb + static_cast<double>(k));
            kfact *= (k + 1);
        }
    }

    Complex logarithmic(Complex w) const {
        const double dn = static_cast<double>(ln);
        Complex value;
        if (log_polynomial_degree) {
            value = polynomial_sum(la, lb, c, *log_polynomial_degree, 1.0 - w);
        } else {
            Complex finite(0.0, 0.0);
            Complex mw_pow(1.0, 0.0);
            for (int k = 0; k < ln; ++k) {
                finite += finite_coef[static_cast<std::size_t>(k)] * mw_pow;
                mw_pow *= -w;
            }
            // mw_pow now holds (-w)^n.
            const Complex log_w = std::log(w);
            Complex psi_k1 = -harmonic(0) - 0.5772156649015329;  // psi(k + 1)
            Complex psi_kn1 = harmonic(ln) - 0.5772156649015329;  // psi(k + n + 1)
            Complex pa = psi_a;
            Complex pb = psi_b;
            Complex coef(1.0, 0.0);
            double nfact = 1.0;
            for (int j = 2; j <= ln; ++j) {
                nfact *= j;
            }
            coef /= nfact;  // (a+n)_0 (b+n)_0 / (0! n!)
            Complex sum(0.0, 0.0);
            Complex wk(1.0, 0.0);
            int small = 0;
            bool done = false;
            for (int k = 0; k < tol.max_series_terms; ++k) {
                const double dk = static_cast<double>(k);
                const Complex term = coef * wk * (log_w - psi_k1 - psi_kn1 + pa + pb);
                sum += term;
                if (std::abs(term) <= 0.25 * kEps * std::abs(sum) && k > 2) {
                    if (++small >= 2) {
                        done = true;
                        break;
                    }
                } else {
                    small = 0;
                }
                coef *= (la + dn + dk) * (lb + dn + dk) / ((dk + 1.0) * (dk + dn + 1.0));
                wk *= w;
                psi_k1 += 1.0 / (dk + 1.0);
                psi_kn1 += 1.0 / (dk + dn + 1.0);
                pa += 1.0 / (la + dn + dk);
                pb += 1.0 / (lb + dn + dk);
            }
            if (!done) {
                throw NonConvergence("logarithmic connection series did not converge");
            }
            value = gamma_c * (r_finite * finite - mw_pow * r_log * sum);
        }
        if (euler) {
            value *= std::exp(-dn * std::log(w));
        }
        return value;
    }

    void setup_interpolated(int n) {
        kind = Kind::Interpolated;
        const Complex eps = s - static_cast<double>(n);
        // Nodes sit well outside the band so they take the standard route.
        const std::array<double, 5> offsets = {-4.0 * kDegenerateBand, -2.0 * kDegenerateBand, 0.0,
                                               2.0 * kDegenerateBand, 4.0 * kDegenerateBand};
        for (double e : offsets) {
            // Shift c so that c - a - b = n + e; e = 0 is the exact logarithmic case.
            const Complex cj = (e == 0.0) ? a + b + static_cast<double>(n) : c - eps + e;
            nodes.push_back(std::make_unique<ConnectionAtOne>(a, b, cj, tol));
        }
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            Complex l(1.0, 0.0);
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                if (i != j) {
                    l *= (eps - offsets[i]) / (offsets[j] - offsets[i]);
                }
            }
            lagrange[j] = l;
        }
    }

    Complex a, b, c;
    TolerancePolicy tol;
    Kind kind = Kind::Standard;
    int degree = 0;
    Complex s{0.0, 0.0};
    // standard
    Complex k1{0.0, 0.0}, k2{0.0, 0.0};
    // logarithmic
    bool euler = false;
    Complex la{0.0, 0.0}, lb{0.0, 0.0};
    int ln = 0;
    std::optional<int> log_polynomial_degree;
    Complex gamma_c{0.0, 0.0}, r_finite{0.0, 0.0}, r_log{0.0, 0.0}, psi_a{0.0, 0.0}, psi_b{0.0, 0.0};
    std::vector<Complex> finite_coef;
    // interpolated
    std::vector<std::unique_ptr<ConnectionAtOne>> nodes;
    std::array<Complex, 5> lagrange{};
};

}  // namespace detail

Hyp2F1Params::Hyp2F1Params(Complex a_in, Complex b_in, Complex c_in) : a(a_in), b(b_in), c(c_in) {
    require_finite(a, "2F1 parameter a");
    require_finite(b, "2F1 parameter b");
    require_finite(c, "2F1 parameter c");
    if (is_nonpositive_integer(c, 1e-14)) {
        throw DomainError("2F1 parameter c must not be a nonpositive integer");
    }
    conjugate_pair = (b == std::conj(a)) && c.imag() == 0.0;
}

Hyp2F1Params Hyp2F1Params::conjugate(Complex a, double c) {
    Hyp2F1Params p(a, std::conj(a), Complex(c, 0.0));
    p.conjugate_pair = true;
    return p;
}

Complex hyp2f1_coefficient(const Hyp2F1Params& params, int n) {
    if (n < 0) {
        throw DomainError("coefficient index must be nonnegative");
    }
    Complex coef(1.0, 0.0);
    for (int j = 0; j < n; ++j) {
        const double dj = static_cast<double>(j);
        coef *= (params.a + dj) * (params.b + dj) / ((params.c + dj) * (dj + 1.0));
    }
    return coef;
}

Complex hyp2f1_series(const Hyp2F1Params& params, Complex z, const TolerancePolicy& tol) {
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("power series requires |z| < 1");
    }
    return series_sum(params.a, params.b, params.c, z, tol);
}

Hyp2F1::Hyp2F1(const Hyp2F1Params& params, const TolerancePolicy& tol) : params_(params), tol_(tol) {
    tol_.validate();
    degree_ = terminating_degree(params_.a, params_.b);
    if (!degree_) {
        direct_conn_ = std::make_unique<detail::ConnectionAtOne>(params_.a, params_.b, params_.c, tol_);
        pfaff_conn_ =
            std::make_unique<detail::ConnectionAtOne>(params_.a, params_.c - params_.b, params_.c, tol_);
    }
}

Hyp2F1::~Hyp2F1() = default;
Hyp2F1::Hyp2F1(Hyp2F1&&) noexcept = default;
Hyp2F1& Hyp2F1::operator=(Hyp2F1&&) noexcept = default;

Complex Hyp2F1::operator()(double z) const { return at(z, 1.0 - z); }

Complex Hyp2F1::at(double z, double one_minus_z) const {
    if (!(z < 1.0) || !(one_minus_z > 0.0)) {
        throw DomainError("real 2F1 argument must satisfy z < 1");
    }
    return eval_real(z, one_minus_z);
}

Complex Hyp2F1::eval_real(double z, double one_minus_z) const {
    const auto& [a, b, c, pair] = params_;
    if (z == 0.0) {
        return {1.0, 0.0};
    }
    if (degree_) {
        return polynomial_sum(a, b, c, *degree_, z);
    }
    if (std::abs(z) <= 0.5) {
        return series_sum(a, b, c, z, tol_);
    }
    if (z > 0.5) {
        if (z <= kSeriesReach) {
            const auto out = series_tracked(a, b, c, z, std::min(tol_.max_series_terms, 4000));
            if (out.converged && out.magnitude <= kSeriesCancellation * std::abs(out.sum)) {
                return out.sum;
            }
        }
        double cancellation = 1.0;
        const Complex v = (*direct_conn_)(Complex(one_minus_z, 0.0), &cancellation);
        return cancellation <= kSeriesCancellation ? v : continue_along_ray(Complex(z, 0.0));
    }
    // Pfaff: F(a, b; c; z) = (1 - z)^{-a} F(a, c - b; c; z / (z - 1)).
    const double w = -z / one_minus_z;
    const Complex pre = std::exp(-a * std::log(one_minus_z));
    if (w <= 0.5) {
        return pre * series_sum(a, c - b, c, w, tol_);
    }
    double cancellation = 1.0;
    const Complex v = (*pfaff_conn_)(Complex(1.0 / one_minus_z, 0.0), &cancellation);
    return cancellation <= kSeriesCancellation ? pre * v : continue_along_ray(Complex(z, 0.0));
}

Complex Hyp2F1::operator()(Complex z) const { return at(z, 1.0 - z); }

Complex Hyp2F1::at(Complex z, Complex one_minus_z) const {
    require_finite(z, "2F1 argument");
    if (z.imag() == 0.0) {
        if (z.real() >= 1.0 || !(one_minus_z.real() > 0.0)) {
            throw BranchError("2F1 argument lies on the branch cut [1, inf)");
        }
        return eval_real(z.real(), one_minus_z.real());
    }
    return eval_complex(z, one_minus_z);
}

Complex Hyp2F1::eval_complex(Complex z, Complex one_minus_z) const {
    const auto& [a, b, c, pair] = params_;
    if (degree_) {
        return polynomial_sum(a, b, c, *degree_, z);
    }
    if (std::abs(z) <= 0.5) {
        return series_sum(a, b, c, z, tol_);
    }
    const Complex one_minus = one_minus_z;
    if (std::abs(one_minus) <= 0.5) {
        double cancellation = 1.0;
        const Complex v = (*direct_conn_)(one_minus, &cancellation);
        if (cancellation <= kSeriesCancellation) {
            return v;
        }
        if (std::abs(z) <= kSeriesReach) {
            const SeriesOutcome out = series_tracked(a, b, c, z, std::min(tol_.max_series_terms, 4000));
            if (out.converged && out.magnitude <= kSeriesCancellation * std::abs(out.sum)) {
                return out.sum;
            }
        }
        return continue_along_ray(z);
    }
    const Complex w = -z / one_minus;
    if (std::abs(w) <= 0.5) {
        return std::exp(-a * std::log(one_minus)) * series_sum(a, c - b, c, w, tol_);
    }
    if (std::abs(one_minus) >= 2.0) {
        double cancellation = 1.0;
        const Complex v = (*pfaff_conn_)(1.0 / one_minus, &cancellation);
        if (cancellation <= kSeriesCancellation) {
            return std::exp(-a * std::log(one_minus)) * v;
        }
    }
    return continue_along_ray(z);
}

// Taylor continuation of the hypergeometric ODE
//   z (1 - z) F'' + [c - (a + b + 1) z] F' - a b F = 0
// from |z| = 1/2 out along the ray through z. Each step stays within half the
// distance to the nearest singular point 0 or 1.
Complex Hyp2F1::continue_along_ray(Complex z) const {
    const auto& [a, b, c, pair] = params_;
    const double radius = std::abs(z);
    const Complex dir = z / radius;
    double r = 0.5;
    Complex z0 = r * dir;
    Complex f = series_sum(a, b, c, z0, tol_);
    Complex df = a * b / c * series_sum(a + 1.0, b + 1.0, c + 1.0, z0, tol_);
    const Complex ab = a * b;
    const Complex q1 = -(a + b + 1.0);
    while (r < radius) {
        const double reach = 0.5 * std::min(std::abs(z0), std::abs(1.0 - z0));
        const double step = std::min(reach, radius - r);
        const Complex h = step * dir;
        const Complex p0 = z0 * (1.0 - z0);
        const Complex p1 = 1.0 - 2.0 * z0;
        const Complex q0 = c + q1 * z0;
        // g_n = f_n h^n
        Complex g_prev = f;
        Complex g_cur = df * h;
        Complex value = g_prev + g_cur;
        Complex deriv = g_cur;  // sum of n g_n, divided by h at the end
        int small = 0;
        bool done = false;
        for (int n = 0; n < tol_.max_series_terms; ++n) {
            const double dn = static_cast<double>(n);
            const Complex g_next =
                -((p1 * dn * (dn + 1.0) + q0 * (dn + 1.0)) * g_cur * h +
                  (-dn * (dn - 1.0) + q1 * dn - ab) * g_prev * h * h) /
                (p0 * (dn + 2.0) * (dn + 1.0));
            value += g_next;
            deriv += (dn + 2.0) * g_next;
            g_prev = g_cur;
            g_cur = g_next;
            if (std::abs(g_next) * (dn + 2.0) <= 0.25 * kEps * std::abs(value) && n > 4) {
                if (++small >= 2) {
                    done = true;
                    break;
                }
            } else {
                small = 0;
            }
        }
        if (!done) {
            throw NonConvergence("2F1 Taylor continuation did not converge");
        }
        f = value;
        df = deriv / h;
        r += step;
        z0 = (r >= radius) ? z : r * dir;
    }
    return f;
}

Complex hyp2f1_eval(const Hyp2F1Params& params, double z, const TolerancePolicy& tol) {
    return Hyp2F1(params, tol)(z);
}

Complex hyp2f1_general_arg(const Hyp2F1Params& params, Complex z, const TolerancePolicy& tol) {
    return Hyp2F1(params, tol)(z);
}

Complex hyp2f1_via_pfaff(const Hyp2F1Params& params, double z, const TolerancePolicy& tol) {
    if (!(z < 0.0)) {
        throw DomainError("Pfaff route is used for z < 0");
    }
    const Hyp2F1Params transformed(params.c - params.a, params.b, params.c);
    const double w = z / (z - 1.0);
    return std::exp(-params.b * std::log(1.0 - z)) * Hyp2F1(transformed, tol)(w);
}

NegZeroResult find_largest_negative_zero(const Hyp2F1Params& params, double search_floor,
                                         const TolerancePolicy& tol, ZeroSearchMode mode) {
    if (!(search_floor < 0.0) || !std::isfinite(search_floor)) {
        throw DomainError("search floor must be finite and negative");
    }
    if (!params.conjugate_pair) {
        throw DomainError("zero search requires a conjugate parameter pair");
    }
    if (!(params.c.real() > 0.0)) {
        throw DomainError("zero search requires c > 0");
    }
    NegZeroResult result;
    result.search_floor = search_floor;
    if (mode == ZeroSearchMode::AnalyticNegInfinity) {
        result.kind = NegZeroKind::AnalyticNegInfinity;
        return result;
    }

    const Hyp2F1 hyp(params, tol);
    auto f = [&hyp](double z) { return hyp(z).real(); };

    // F > 0 on [0, 1) for a conjugate pair; check a few points as evidence.
    for (double z : {0.25, 0.5, 0.75, 0.9}) {
        if (!(f(z) > 0.0)) {
            throw NonConvergence("2F1 conjugate-pair positivity on [0, 1) failed at z = " + std::to_string(z));
        }
        ++result.grid_points_checked;
    }

    constexpr double kStart = 1e-3;
    constexpr double kRatio = 1.25;
    double upper = 0.0;  // F(0) = 1
    double z = -kStart;
    bool at_floor = false;
    while (true) {
        if (z <= search_floor) {
            z = search_floor;
            at_floor = true;
        }
        if (f(z) <= 0.0) {
            double lo = z;
            double hi = upper;
            while (hi - lo > std::max(1e-12, 4.0 * kEps * std::abs(lo))) {
                const double mid = 0.5 * (lo + hi);
                if (f(mid) <= 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            result.kind = NegZeroKind::Found;
            result.bracket = {lo, hi};
            result.p = 0.5 * (lo + hi);
            return result;
        }
        ++result.grid_points_checked;
        if (at_floor) {
            break;
        }
        upper = z;
        z *= kRatio;
    }
    result.kind = NegZeroKind::NoneInSearchRange;
    return result;
}

double legendre_identity_check(Complex a, double z, const TolerancePolicy& tol) {
    if (!(z > 0.0 && z <= 1.0)) {
        throw DomainError("Legendre identity check requires z in (0, 1]");
    }
    const Complex lhs = hyp2f1_eval(Hyp2F1Params(a, a, 1.0), 1.0 - z, tol);
    const Complex legendre = hyp2f1_eval(Hyp2F1Params(a, 1.0 - a, 1.0), 1.0 - 1.0 / z, tol);
    const Complex rhs = principal_pow(Complex(z, 0.0), -a) * legendre;
    return std::abs(lhs - rhs);
}

}  // namespace wmod
