#pragma once

// Gauss-Kronrod (7, 15) quadrature: a globally adaptive driver for smooth
// integrands on finite intervals, plus the raw rule for callers that lay out
// their own panels.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace paraqed::quad {

namespace gk15 {

// Nonnegative Kronrod abscissae; odd indices are the embedded Gauss points.
inline constexpr std::array<double, 8> nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/// One panel worth of abscissae and weights on [a, b], in a flat layout
/// suitable for precomputing integrand samples.
struct Panel {
    std::array<double, 15> x;
    std::array<double, 15> wk;  // Kronrod weights, scaled by the half width
    std::array<double, 15> wg;  // Gauss weights (zero at pure Kronrod points)
};

inline Panel panel(double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Panel p{};
    p.x[0] = c;
    p.wk[0] = kronrod_weights[7] * h;
    p.wg[0] = gauss_weights[3] * h;
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * nodes[j];
        const double wk = kronrod_weights[j] * h;
        const double wg = (j % 2 == 1) ? gauss_weights[j / 2] * h : 0.0;
        p.x[1 + 2 * j] = c - dx;
        p.x[2 + 2 * j] = c + dx;
        p.wk[1 + 2 * j] = wk;
        p.wk[2 + 2 * j] = wk;
        p.wg[1 + 2 * j] = wg;
        p.wg[2 + 2 * j] = wg;
    }
    return p;
}

} // namespace gk15

template <class T>
struct Estimate {
    T value{};
    double abs_error = 0.0;
};

/// Apply the (7, 15) pair once on [a, b].
template <class T, class F>
Estimate<T> apply_gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kronrod = fc * gk15::kronrod_weights[7];
    T gauss = fc * gk15::gauss_weights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = h * gk15::nodes[j];
        const T sum = f(c - dx) + f(c + dx);
        kronrod += sum * gk15::kronrod_weights[j];
        if (j % 2 == 1) gauss += sum * gk15::gauss_weights[j / 2];
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class T>
struct Result {
    T value{};
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive bisection: always split the interval with the largest
/// local error until the summed error meets max(abs_tol, rel_tol * |I|).
template <class T = double, class F>
Result<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                    int max_intervals = 4000) {
    struct Piece {
        double a, b;
        Estimate<T> est;
        bool operator<(const Piece& o) const { return est.abs_error < o.est.abs_error; }
    };

    Result<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Piece> heap;
    Piece first{a, b, apply_gk15<T>(f, a, b)};
    T total = first.est.value;
    double err = first.est.abs_error;
    heap.push(first);
    out.intervals = 1;

    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && out.intervals < max_intervals) {
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;
        }
        Piece left{worst.a, mid, apply_gk15<T>(f, worst.a, mid)};
        Piece right{mid, worst.b, apply_gk15<T>(f, mid, worst.b)};
        total += left.est.value + right.est.value - worst.est.value;
        err += left.est.abs_error + right.est.abs_error - worst.est.abs_error;
        heap.push(left);
        heap.push(right);
        ++out.intervals;
    }

    // Re-sum from the pieces to shed the drift of the running updates.
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().est.value;
        esum += heap.top().est.abs_error;
        heap.pop();
    }
    out.value = sum;
    out.abs_error = esum;
    out.converged = esum <= std::max(abs_tol, rel_tol * std::abs(sum));
    return out;
}

} // namespace paraqed::quad
