#include "paraqed/photon.hpp"

#include <cmath>

#include "paraqed/errors.hpp"
#include "paraqed/quadrature.hpp"

namespace paraqed {

using specfun::pi;

namespace {

struct FieldConstants {
    double period;       // T = 2f = 2u
    double gamma;        // Gamma in units of c k0
    double stability;
    double phase0;       // 2 pi n0
};

FieldConstants field_constants(const CavityParams& params) {
    params.validate();
    const double ratio = rate_semiclassical(params).ratio_total;
    return {2.0 * params.u, ratio * params.gamma_s_T / (2.0 * params.u), specfun::stability(params.u),
            2.0 * pi * (params.u / pi - 0.5)};
}

// exp(+-i (t - arrival)) exp(-Gamma (t - arrival) / 2).
std::complex<double> envelope(double sg, double gamma, double elapsed) {
    return std::polar(std::exp(-0.5 * gamma * elapsed), sg * elapsed);
}

// int_0^inf g(y) dy through y = e^w; both lobes become O(1)-wide bumps.
template <class G>
double integrate_half_line(G&& g, double w_hi) {
    auto f = [&](double w) {
        const double y = std::exp(w);
        return y * g(y);
    };
    const auto r = quad::integrate(f, -45.0, w_hi, 1e-15, 1e-14, 20000);
    if (!r.converged) throw QuadratureFailure("plane_integral: quadrature did not converge", r.abs_error);
    return r.value;
}

} // namespace

FieldSample one_photon_amplitude(const CavityParams& params, const ParabolicPoint& p, double t_over_T, Branch branch) {
    const FieldConstants c = field_constants(params);
    FieldSample out;
    out.point = p;
    out.t_over_T = t_over_T;
    out.branch = branch;
    out.radiation_zone = std::max(p.xi, p.eta) >= 10.0;
    out.slow_decay = params.gamma_s_T < 0.1;
    if (!(p.xi > 0.0) || !(p.eta > 0.0)) return out;  // e_phi vanishes on the axis

    const double sg = branch_sign(branch);
    const double t = std::abs(t_over_T) * c.period;
    const double direct = 0.5 * (p.xi + p.eta);
    const double reflected = 0.5 * (p.xi - p.eta);
    const double f2 = 2.0 * params.u;
    const double l1 = -0.5 * std::log(p.xi / p.eta);
    const double l2 = -0.5 * std::log(p.xi * p.eta / (f2 * f2));

    std::complex<double> sum = 0.0;
    for (int m = 0; m <= params.m_max; ++m) {
        std::complex<double> bracket = 0.0;
        if (t - direct - m * c.period > 0.0) {
            bracket += envelope(sg, c.gamma, t - direct) * specfun::half_sech_squared(l1 + 2.0 * m * c.stability);
        }
        if (m >= 1 && t - reflected - m * c.period > 0.0) {
            bracket -= envelope(sg, c.gamma, t - reflected) *
                       specfun::half_sech_squared(l2 + 2.0 * (m - 1) * c.stability);
        }
        if (bracket != 0.0) sum += std::polar(1.0, -sg * m * c.phase0) * bracket;
    }
    out.amplitude = std::complex<double>(0.0, sg) * pi * pi * sum / std::sqrt(p.xi * p.eta);
    return out;
}

std::complex<double> simplified_amplitude(const CavityParams& params, const ParabolicPoint& p, double t_over_T,
                                          Branch branch) {
    const FieldConstants c = field_constants(params);
    const double sg = branch_sign(branch);
    const double t = std::abs(t_over_T) * c.period;
    const double rho = std::sqrt(p.xi * p.eta);
    const double r = 0.5 * (p.xi + p.eta);
    const double z = 0.5 * (p.xi - p.eta);
    const double f = params.u;
    const double q = rho / (2.0 * f);

    std::complex<double> sum = 0.0;
    if (t - r > 0.0 && r > 0.0) sum += envelope(sg, c.gamma, t - r) * rho / (r * r);
    if (t - z - c.period > 0.0) {
        sum -= envelope(sg, c.gamma, t - z) * std::polar(1.0, -sg * c.phase0) * (2.0 / f) * q /
               ((1.0 + q * q) * (1.0 + q * q));
    }
    return std::complex<double>(0.0, sg) * (0.5 * pi * pi) * sum;
}

double transverse_correction(const CavityParams& params, double y) {
    const double v = 2.0 * specfun::stability(params.u);
    double h = 0.0;
    for (int m = 1; m <= params.m_max; ++m) {
        const double e = std::exp(-2.0 * m * v);
        if (e == 0.0) break;
        const double d = (1.0 + y) * (1.0 + y * e);
        h += 12.0 * std::cos(2.0 * m * (params.u - 0.5 * pi)) * y * e / (d * d);
    }
    return h;
}

double transverse_shape(const CavityParams& params, double y) {
    const double a = 1.0 + y;
    return 6.0 * y / (a * a * a * a) + transverse_correction(params, y);
}

TransverseProfile transverse_distribution(const CavityParams& params, const std::vector<double>& y_grid,
                                          Execution exec) {
    params.validate();
    for (double y : y_grid)
        if (!(y >= 0.0)) throw InvalidParameter("transverse_distribution: y must be nonnegative");
    TransverseProfile out;
    out.y_grid = y_grid;
    out.m_max = params.m_max;
    out.intensity.assign(y_grid.size(), 0.0);
    for_each_index(y_grid.size(), exec, [&](std::size_t i) { out.intensity[i] = transverse_shape(params, y_grid[i]); });
    out.integral = plane_integral(params);
    return out;
}

double planar_energy_density(const CavityParams& params, double y, double f) {
    const double ratio = rate_semiclassical(params).ratio_total;
    return transverse_shape(params, y) / (ratio * 4.0 * pi * f * f);
}

double plane_integral(const CavityParams& params) {
    params.validate();
    const double ratio = rate_semiclassical(params).ratio_total;
    const double v = 2.0 * specfun::stability(params.u);
    double total = integrate_half_line(
        [](double y) {
            const double a = 1.0 + y;
            return 6.0 * y / (a * a * a * a);
        },
        45.0);
    for (int m = 1; m <= params.m_max; ++m) {
        // Beyond this the lobe integral (about 2 m v e^{-2 m v}) is below 1e-250.
        if (2.0 * m * v > 600.0) break;
        const double e = std::exp(-2.0 * m * v);
        const double lobe = integrate_half_line(
            [e](double y) {
                const double d = (1.0 + y) * (1.0 + y * e);
                return y * e / (d * d);
            },
            45.0 + 2.0 * m * v);
        total += 12.0 * std::cos(2.0 * m * (params.u - 0.5 * pi)) * lobe;
    }
    return total / ratio;
}

double distribution_norm_check(const CavityParams& params) { return std::abs(plane_integral(params) - 1.0); }

} // namespace paraqed
