// SPDX-License-Identifier: Apache-2.0
#include "wmod/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace wmod {

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
    value += other.value;
    abs_err_estimate += other.abs_err_estimate;
    nodes_used += other.nodes_used;
    converged = converged && other.converged;
    return *this;
}

QuadratureResult QuadratureResult::scaled(Complex factor) const {
    QuadratureResult r = *this;
    r.value *= factor;
    r.abs_err_estimate *= std::abs(factor);
    return r;
}

namespace {

constexpr double kTanhSinhTauMax = 4.5;

}  // namespace

QuadratureResult tanh_sinh(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                           int max_levels) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    const double half = 0.5 * (b - a);
    const double half_pi = 0.5 * kPi;

    // Sum over nodes tau = j * h for the given index range and stride.
    auto node_pair = [&](double tau) -> Complex {
        const double u = half_pi * std::sinh(tau);
        const double e = std::exp(-2.0 * u);
        // distance from the right endpoint in units of `half`
        const double delta = 2.0 * e / (1.0 + e);
        const double weight = half_pi * std::cosh(tau) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (weight == 0.0 || delta == 0.0) {
            return {0.0, 0.0};
        }
        out.nodes_used += 2;
        return weight * (f(b - half * delta) + f(a + half * delta));
    };

    Complex sum = half_pi * f(a + half);  // tau = 0 node, weight pi/2
    out.nodes_used = 1;
    double h = 1.0;
    for (double tau = h; tau <= kTanhSinhTauMax; tau += h) {
        sum += node_pair(tau);
    }
    Complex estimate = half * h * sum;
    double err = std::abs(estimate);
    const int levels = std::max(3, max_levels);
    for (int level = 1; level <= levels; ++level) {
        h *= 0.5;
        for (double tau = h; tau <= kTanhSinhTauMax; tau += 2.0 * h) {
            sum += node_pair(tau);
        }
        const Complex next = half * h * sum;
        err = std::abs(next - estimate);
        estimate = next;
        if (level >= 3 && err <= std::max(abs_tol, rel_tol * std::abs(estimate))) {
            out.value = estimate;
            out.abs_err_estimate = err;
            out.converged = true;
            return out;
        }
    }
    out.value = estimate;
    out.abs_err_estimate = err;
    out.converged = false;
    return out;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    Complex value;
    double err;
    bool operator<(const Segment& other) const { return err < other.err; }
};

Segment gk15(const Integrand& f, double a, double b, int& nodes) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<Complex, 15> fv;
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }
    nodes += 15;
    Complex kronrod = kWgk[7] * fv[7];
    Complex gauss = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        kronrod += kWgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * (fv[j] + fv[14 - j]);
        }
    }
    const Complex mean = 0.5 * kronrod;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    }
    resasc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    // Never report less than rounding noise.
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod * half));
    return {a, b, kronrod * half, err};
}

}  // namespace

QuadratureResult gauss_kronrod(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                               int max_subdivisions) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b, out.nodes_used);
    Complex total = first.value;
    double total_err = first.err;
    heap.push(first);
    int subdivisions = 0;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && subdivisions < max_subdivisions) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;  // interval exhausted at machine resolution
        }
        Segment left = gk15(f, worst.a, mid, out.nodes_used);
        Segment right = gk15(f, mid, worst.b, out.nodes_used);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }
    // Re-sum in a fixed order to limit drift from the incremental updates.
    std::vector<Segment> segments;
    segments.reserve(heap.size());
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    total = {0.0, 0.0};
    total_err = 0.0;
    for (const auto& s : segments) {
        total += s.value;
        total_err += s.err;
    }
    out.value = total;
    out.abs_err_estimate = total_err;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

QuadratureResult integrate_tail(const Integrand& f, double start, double panel_width, double rel_tol,
                                double abs_tol, int max_panels, int quiet_panels) {
    QuadratureResult out;
    out.converged = true;
    if (!(panel_width > 0.0)) {
        throw DomainError("panel width must be positive");
    }
    int quiet = 0;
    double lo = start;
    double previous = std::numeric_limits<double>::infinity();
    for (int panel = 0; panel < max_panels; ++panel) {
        const double hi = lo + panel_width;
        QuadratureResult piece = gauss_kronrod(f, lo, hi, rel_tol, abs_tol);
        out += piece;
        const double size = std::abs(piece.value);
        const bool small = size <= rel_tol * std::abs(out.value) || size <= abs_tol;
        quiet = (small && size <= previous) ? quiet + 1 : 0;
        previous = size;
        lo = hi;
        if (quiet >= quiet_panels) {
            return out;
        }
    }
    out.converged = false;
    return out;
}

}  // namespace wmod
