#include "paraqed/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "paraqed/errors.hpp"
#include "paraqed/quadrature.hpp"

namespace paraqed::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double log_coulomb_normalization(double mu) {
    const double x = 2.0 * pi * mu;
    if (std::abs(x) < 1e-8) return 0.5 * std::log1p(-0.5 * x + x * x / 12.0);
    if (x > 0.0) return 0.5 * (std::log(x) - x - std::log1p(-std::exp(-x)));
    return 0.5 * std::log(x / std::expm1(x));
}

double wrap_angle(double d) {
    while (d > pi) d -= 2.0 * pi;
    while (d <= -pi) d += 2.0 * pi;
    return d;
}

// Unnormalized regular solution carried as exp(log_scale) * (value, derivative).
struct Walk {
    double value = 0.0;
    double derivative = 1.0;
    double log_scale = 0.0;
    double theta = 0.0;
    int steps = 0;
    double cancellation = 1.0;  // largest term / result in the origin series
};

// Ascending series about the origin, F = sum_{k>=1} A_k rho^k with A_1 = 1,
// A_2 = mu and k(k-1) A_k = 2 mu A_{k-1} - A_{k-2}.
void origin_series(double mu, double rho, Walk& w) {
    double t_prev2 = rho;             // k = 1
    double t_prev1 = mu * rho * rho;  // k = 2
    double f = t_prev2 + t_prev1;
    double rf = t_prev2 + 2.0 * t_prev1;  // rho * F'
    double biggest = std::max(std::abs(t_prev2), std::abs(t_prev1));
    for (int k = 3; k < 500; ++k) {
        const double t = (2.0 * mu * rho * t_prev1 - rho * rho * t_prev2) / (double(k) * double(k - 1));
        f += t;
        rf += double(k) * t;
        biggest = std::max(biggest, std::abs(t));
        if (std::abs(t) + std::abs(t_prev1) <= 1e-18 * std::abs(f) && k > 4) break;
        t_prev2 = t_prev1;
        t_prev1 = t;
    }
    w.value = f;
    w.derivative = rho > 0.0 ? rf / rho : 1.0;
    w.cancellation = f != 0.0 ? std::max(1.0, biggest / std::abs(f)) : 1.0;
}

// Re-expansion about rho0: rho F'' = (2 mu - rho) F gives, with d_j = c_j h^j,
// rho0 (j+1)(j+2) d_{j+2} = (2 mu - rho0) h^2 d_j - h^3 d_{j-1} - j(j+1) h d_{j+1}.
void taylor_step(double mu, double rho0, double h, double& f, double& df) {
    double dm1 = 0.0;
    double d0 = f;
    double d1 = df * h;
    double sum = d0 + d1;
    double dsum = d1;
    const double a = (2.0 * mu - rho0) * h * h;
    const double h3 = h * h * h;
    for (int j = 0; j < 600; ++j) {
        const double d2 = (a * d0 - h3 * dm1 - double(j) * double(j + 1) * h * d1) /
                          (rho0 * double(j + 1) * double(j + 2));
        sum += d2;
        dsum += double(j + 2) * d2;
        if (j > 3 && std::abs(d2) + std::abs(d1) <= 1e-18 * (std::abs(sum) + std::abs(dsum))) break;
        dm1 = d0;
        d0 = d1;
        d1 = d2;
    }
    f = sum;
    df = dsum / h;
}

Walk walk_to(double mu, double rho) {
    Walk w;
    if (rho == 0.0) return w;
    const double rho_start = std::min(rho, 1.0 / std::max(1.0, 2.0 * std::abs(mu)));
    origin_series(mu, rho_start, w);
    w.theta = std::atan2(w.value, w.derivative);

    double r0 = rho_start;
    while (r0 < rho) {
        double h = std::min({rho - r0, 0.5 * r0, 2.0});
        const double q = std::max({std::abs(1.0 - 2.0 * mu / r0), std::abs(1.0 - 2.0 * mu / (r0 + h)), 1.0});
        h = std::min(h, 1.5 / std::sqrt(q));
        // Guard against a stalled walk when the remaining distance underflows.
        if (r0 + h == r0) break;
        const double angle_before = std::atan2(w.value, w.derivative);
        taylor_step(mu, r0, h, w.value, w.derivative);
        const double m = std::hypot(w.value, w.derivative);
        w.value /= m;
        w.derivative /= m;
        w.log_scale += std::log(m);
        w.theta += wrap_angle(std::atan2(w.value, w.derivative) - angle_before);
        r0 += h;
        ++w.steps;
    }
    return w;
}

} // namespace

double coulomb_normalization(double mu) { return std::exp(log_coulomb_normalization(mu)); }

double arg_gamma_one_plus_i(double mu) {
    if (mu == 0.0) return 0.0;
    constexpr int shift = 10;
    const std::complex<double> w(1.0 + shift, mu);
    const std::complex<double> lw = std::log(w);
    double im = ((w - 0.5) * lw - w).imag();
    // Stirling corrections B_2k / (2k (2k-1) w^(2k-1)).
    static constexpr std::array<double, 7> coeff = {
        1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0};
    const std::complex<double> inv = 1.0 / w;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> p = inv;
    for (double c : coeff) {
        im += c * p.imag();
        p *= inv2;
    }
    for (int j = 0; j < shift; ++j) im -= std::atan2(mu, 1.0 + j);
    return im;
}

double coulomb_phase(double mu, double rho) {
    if (!(rho > 0.0)) throw InvalidParameter("coulomb_phase: rho must be positive");
    return rho - mu * std::log(2.0 * rho) + arg_gamma_one_plus_i(mu);
}

double coulomb_prufer_angle(double mu, double rho) {
    if (!(rho >= 0.0)) throw InvalidParameter("coulomb_prufer_angle: rho must be nonnegative");
    return walk_to(mu, rho).theta;
}

CoulombEval coulomb_f0_series(double mu, double rho) {
    if (!(rho >= 0.0)) throw InvalidParameter("coulomb_f0: rho must be nonnegative");
    CoulombEval out;
    out.regime = CoulombRegime::series;
    if (rho == 0.0) {
        out.value = 0.0;
        out.derivative = coulomb_normalization(mu);
        return out;
    }
    const Walk w = walk_to(mu, rho);
    const double scale = std::exp(log_coulomb_normalization(mu) + w.log_scale);
    out.value = scale * w.value;
    out.derivative = scale * w.derivative;
    const double amplitude = scale * std::hypot(w.value, w.derivative);
    out.est_error = amplitude * eps * (16.0 * w.cancellation + 8.0 * w.steps);
    return out;
}

std::optional<CoulombEval> coulomb_f0_asymptotic(double mu, double rho, double tol) {
    if (!(rho > 0.0)) return std::nullopt;
    double f = 1.0, g = 0.0, fs = 0.0, gs = 1.0 - mu / rho;
    double sf = f, sg = g, sfs = fs, sgs = gs;
    double last = std::abs(f) + std::abs(gs);
    bool converged = false;
    for (int k = 0; k < 400; ++k) {
        const double denom = (2.0 * k + 2.0) * rho;
        const double a = (2.0 * k + 1.0) * mu / denom;
        const double b = (mu * mu - double(k) * double(k + 1)) / denom;
        const double f1 = a * f - b * g;
        const double g1 = a * g + b * f;
        const double fs1 = a * fs - b * gs - f1 / rho;
        const double gs1 = a * gs + b * fs - g1 / rho;
        const double size = std::abs(f1) + std::abs(g1) + std::abs(fs1) + std::abs(gs1);
        if (size > last && k > 2) break;  // divergent tail of the asymptotic series
        f = f1, g = g1, fs = fs1, gs = gs1;
        sf += f, sg += g, sfs += fs, sgs += gs;
        last = size;
        if (size < 1e-17 * (std::abs(sf) + std::abs(sg) + std::abs(sfs) + std::abs(sgs))) {
            converged = true;
            break;
        }
    }
    if (!converged && last > tol) return std::nullopt;
    const double theta = coulomb_phase(mu, rho);
    const double c = std::cos(theta), s = std::sin(theta);
    CoulombEval out;
    out.value = sg * c + sf * s;
    out.derivative = sgs * c + sfs * s;
    out.regime = CoulombRegime::asymptotic;
    // Phase error of arg Gamma and the log term enters as rho * eps.
    out.est_error = last + 4.0 * eps * (rho + std::abs(mu * std::log(2.0 * rho)) + 1.0);
    if (out.est_error > tol) return std::nullopt;
    return out;
}

CoulombEval coulomb_f0(double mu, double rho, double tol) {
    if (!(rho >= 0.0)) throw InvalidParameter("coulomb_f0: rho must be nonnegative");
    if (!(tol > 0.0)) throw InvalidParameter("coulomb_f0: tol must be positive");
    const double switch_rho = std::max(10.0, 2.0 * std::abs(mu));
    if (rho > switch_rho) {
        if (auto a = coulomb_f0_asymptotic(mu, rho, tol)) return *a;
    }
    CoulombEval s = coulomb_f0_series(mu, rho);
    if (s.est_error > tol * std::max(1.0, std::abs(s.value))) {
        throw NonConvergence("coulomb_f0: no regime meets tol at mu=" + std::to_string(mu) +
                             ", rho=" + std::to_string(rho));
    }
    return s;
}

StabilityValue stability_function(double u, double tol) {
    if (!(u >= 0.0)) throw InvalidParameter("stability_function: u must be nonnegative");
    if (u == 0.0) return {0.0, 0.0};
    if (u <= 50.0) {
        auto integrand = [](double y) {
            const double s = std::sin(y);
            return s * s / y;
        };
        const auto r = quad::integrate(integrand, 0.0, u, 0.1 * tol, 1e-15);
        if (!r.converged) throw QuadratureFailure("stability_function: quadrature did not converge", r.abs_error);
        return {u, r.value};
    }
    // int_0^u sin^2 y / y dy = (gamma + ln 2u - Ci(2u)) / 2, exact.
    return {u, 0.5 * (euler_gamma + std::log(2.0 * u) - cosine_integral(2.0 * u))};
}

double stability(double u) { return stability_function(u).s; }

double coth_sinh_weight(double b) {
    const double a = std::abs(b);
    if (a < 0.1) {
        const double z = a * a;
        return 1.0 / 3.0 +
               z * (-2.0 / 15.0 +
                    z * (2.0 / 63.0 +
                         z * (-4.0 / 675.0 +
                              z * (2.0 / 2079.0 + z * (-2764.0 / 19348875.0 + z * (4.0 / 200475.0))))));
    }
    // coth b = (1+e)/(1-e), 1/sinh^2 b = 4e/(1-e)^2 with e = exp(-2b).
    const double e = std::exp(-2.0 * a);
    const double one_minus = -std::expm1(-2.0 * a);
    const double coth = (1.0 + e) / one_minus;
    return (a * coth - 1.0) * 4.0 * e / (one_minus * one_minus);
}

double sinh_kernel_even(double beta) {
    if (beta == 0.0) return pi * pi / 3.0;
    return pi * pi * coth_sinh_weight(0.5 * beta);
}

double half_sech_squared(double x) {
    const double e = std::exp(-2.0 * std::abs(x));
    return 2.0 * e / ((1.0 + e) * (1.0 + e));
}

double sinh_kernel_odd(double beta) { return pi * pi * half_sech_squared(0.5 * beta); }

double x_over_sinh_squared(double x) {
    const double a = std::abs(x);
    if (a < 0.1) {
        const double z = a * a;
        return 1.0 + z * (-1.0 / 3.0 + z * (1.0 / 15.0 + z * (-2.0 / 189.0 + z * (1.0 / 675.0 + z * (-2.0 / 10395.0)))));
    }
    const double e = std::exp(-2.0 * a);
    const double one_minus = -std::expm1(-2.0 * a);
    return 4.0 * a * a * e / (one_minus * one_minus);
}

namespace {

// Si and Ci together: power series for x <= 2, continued fraction for the
// complex exponential integral E1(ix) beyond.
void sici(double x, double& si, double& ci) {
    if (x <= 2.0) {
        const double z = x * x;
        // Si = sum (-1)^n x^(2n+1) / ((2n+1)(2n+1)!)
        double term = x;  // x^(2n+1)/(2n+1)!
        double s = x;
        for (int n = 1; n < 40; ++n) {
            term *= -z / ((2.0 * n) * (2.0 * n + 1.0));
            const double t = term / (2.0 * n + 1.0);
            s += t;
            if (std::abs(t) < 1e-18 * std::abs(s)) break;
        }
        // Ci = gamma + ln x + sum (-1)^n x^(2n) / (2n (2n)!)
        double tc = 1.0;  // x^(2n)/(2n)!
        double c = 0.0;
        for (int n = 1; n < 40; ++n) {
            tc *= -z / ((2.0 * n - 1.0) * (2.0 * n));
            const double t = tc / (2.0 * n);
            c += t;
            if (std::abs(t) < 1e-18 * (std::abs(c) + 1e-300)) break;
        }
        si = s;
        ci = euler_gamma + std::log(x) + c;
        return;
    }
    // Modified Lentz on E1(ix) = exp(-ix) * 1/(1+ix - 1/(3+ix - 4/(5+ix - ...))).
    constexpr double tiny = 1e-300;
    std::complex<double> b(1.0, x);
    std::complex<double> c(1.0 / tiny, 0.0);
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 2; i < 1000; ++i) {
        const double a = -double(i - 1) * double(i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const std::complex<double> del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    h *= std::complex<double>(std::cos(x), -std::sin(x));
    ci = -h.real();
    si = 0.5 * pi + h.imag();
}

} // namespace

double sine_integral(double x) {
    if (x == 0.0) return 0.0;
    double si, ci;
    sici(std::abs(x), si, ci);
    return x < 0.0 ? -si : si;
}

double cosine_integral(double x) {
    if (!(x > 0.0)) throw InvalidParameter("cosine_integral: x must be positive");
    double si, ci;
    sici(x, si, ci);
    return ci;
}

} // namespace paraqed::specfun
