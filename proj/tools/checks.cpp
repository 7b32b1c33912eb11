#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "paraqed/dynamics.hpp"
#include "paraqed/execution.hpp"
#include "paraqed/photon.hpp"
#include "paraqed/quadrature.hpp"
#include "paraqed/sweep.hpp"

namespace paraqed::checks {

using specfun::pi;

const std::vector<double>& kernel_betas() {
    static const std::vector<double> b = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    return b;
}

double coulomb_free_deviation() {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double rho = 0.1 * i;
        worst = std::max(worst, std::abs(specfun::coulomb_f0(0.0, rho).value - std::sin(rho)));
    }
    return worst;
}

double coulomb_overlap_deviation() {
    double worst = 0.0;
    for (double mu : {-3.0, -1.0, -0.2, 0.0, 0.5, 2.0}) {
        for (double rho = 12.0; rho <= 120.0; rho += 6.5) {
            const auto a = specfun::coulomb_f0_asymptotic(mu, rho, 1e-10);
            if (!a) continue;
            const auto s = specfun::coulomb_f0_series(mu, rho);
            worst = std::max({worst, std::abs(a->value - s.value), std::abs(a->derivative - s.derivative)});
        }
    }
    return worst;
}

int stability_monotone_violations() {
    int bad = 0;
    double prev = specfun::stability(0.0);
    for (int i = 1; i <= 2000; ++i) {
        const double s = specfun::stability(0.05 * i);
        if (s < prev) ++bad;
        prev = s;
    }
    return bad;
}

double kernel_quadrature_deviation(const Kernel& kernel, bool even) {
    double worst = 0.0;
    for (double beta : kernel_betas()) {
        auto f = [&](double x) {
            if (x == 0.0) return 1.0;
            const double s = std::sinh(x);
            return (even ? x * x / (s * s) : x / s) * std::cos(beta * x / pi);
        };
        const auto r = quad::integrate(f, 0.0, 60.0, 1e-14, 0.0, 20000);
        worst = std::max(worst, std::abs(kernel(beta) - 2.0 * r.value));
    }
    return worst;
}

double kernel_parity_deviation(const Kernel& kernel) {
    double worst = 0.0;
    for (double beta : kernel_betas()) worst = std::max(worst, std::abs(kernel(beta) - kernel(-beta)));
    return worst;
}

double exact_mode_alpha(const CavityParams& base, int n_top) {
    double worst = 0.0;
    for (int n = 0; n <= n_top; ++n) {
        CavityParams p = base;
        p.u = pi * (n + 0.5);
        worst = std::max(worst, std::abs(solve_separation_constant(p, n).alpha_over_k));
    }
    return worst;
}

EikonalGap eikonal_gap(const CavityParams& base, const std::vector<double>& us, const std::vector<int>& ns) {
    EikonalGap g;
    for (const auto& a : alpha_sweep(base, us, ns)) {
        if (std::abs(a.alpha_over_k) > 1.0) continue;
        ++g.points;
        const double d = std::abs(a.alpha_over_k - a.eikonal);
        if (d > g.worst) g = {d, a.u, a.n, g.points};
    }
    return g;
}

double norm_gap(const CavityParams& base, double u) {
    CavityParams p = base;
    p.u = u;
    // The linear eikonal puts x = 0 at n = u/pi - 1/2; check both neighbours.
    const int lo = std::max(0, int(std::floor(u / pi - 0.5)));
    QuantizedMode best = quantize(p, lo);
    const QuantizedMode next = quantize(p, lo + 1);
    if (std::abs(next.alpha_over_k) < std::abs(best.alpha_over_k)) best = next;
    return std::abs(best.norm - normalization_semiclassical(p, best).value) / best.norm;
}

NormGap worst_norm_gap(const CavityParams& base, const std::vector<double>& us) {
    std::vector<double> gaps(us.size());
    for_each_index(us.size(), Execution::parallel, [&](std::size_t i) { gaps[i] = norm_gap(base, us[i]); });
    NormGap g;
    for (std::size_t i = 0; i < us.size(); ++i)
        if (gaps[i] > g.worst) g = {gaps[i], us[i]};
    return g;
}

double exact_norm_identity(const CavityParams& base, double u) {
    CavityParams p = base;
    p.u = u;
    QuantizedMode m;
    m.alpha_over_k = 0.0;
    const double expect = 4.0 * specfun::stability(u) / pi;
    return std::abs(normalization_exact(p, m) - expect) / expect;
}

ResidualCheck residual_check(const CavityParams& base, const std::vector<double>& us, const std::vector<int>& ns) {
    ResidualCheck c;
    for (const auto& a : alpha_sweep(base, us, ns)) {
        const ChiValue v = chi(a.alpha_over_k, a.u);
        const double again = std::abs(v.derivative) / std::hypot(v.value, v.derivative);
        c.worst_residual = std::max(c.worst_residual, a.residual);
        c.worst_repeat = std::max(c.worst_repeat, std::abs(again - a.residual));
    }
    return c;
}

double roundtrip_deviation(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const double x = coord(rng), y = coord(rng), z = coord(rng);
        const CartesianPoint c = to_cartesian(to_parabolic(x, y, z));
        const double scale = std::max(1.0, std::sqrt(x * x + y * y + z * z));
        worst = std::max(worst, std::sqrt((c.x - x) * (c.x - x) + (c.y - y) * (c.y - y) + (c.z - z) * (c.z - z)) / scale);
    }
    return worst;
}

RateGap rate_gap(const CavityParams& base, const std::vector<double>& us, double threshold) {
    RateGap g;
    for (const auto& r : rate_sweep(base, us, true, true)) {
        const double d = std::abs(*r.exact - *r.semiclassical) / *r.exact;
        if (d > threshold) ++g.over;
        if (d > g.worst) {
            g.worst = d;
            g.u = r.u;
        }
    }
    return g;
}

double resonance_identity_deviation(const CavityParams& base, const std::vector<double>& us) {
    double worst = 0.0;
    for (double u : us) {
        CavityParams p = base;
        p.u = u;
        const double lhs = -2.0 * self_energy(p, 0.0).value.imag();
        worst = std::max(worst, std::abs(lhs - rate_semiclassical(p).ratio_total));
    }
    return worst;
}

double truncation_bound_ratio(const CavityParams& base, const std::vector<double>& us) {
    double worst = 0.0;
    for (double u : us) {
        CavityParams p = base;
        p.u = u;
        const auto r = rate_semiclassical(p);
        p.m_max *= 2;
        const double actual = std::abs(rate_semiclassical(p).ratio_total - r.ratio_total);
        if (actual == 0.0) continue;
        worst = std::max(worst, r.truncation_bound > 0.0 ? actual / r.truncation_bound
                                                         : std::numeric_limits<double>::infinity());
    }
    return worst;
}

double oracle_gap(const CavityParams& params, double t_max, int count) {
    const auto grid = linspace(0.0, t_max, count);
    const auto a = decay_trace(params, grid, TraceMethod::path_series);
    const auto b = decay_trace(params, grid, TraceMethod::contour_oracle);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

double free_envelope_deviation(const CavityParams& params, double t_max, int count) {
    CavityParams p = params;
    p.m_max = 0;
    double worst = 0.0;
    for (double t : linspace(0.0, t_max, count)) {
        const double a = std::abs(path_series_amplitude(p, t).value);
        worst = std::max(worst, std::abs(a - std::exp(-0.5 * p.gamma_s_T * t)));
    }
    return worst;
}

double time_reversal_deviation(const CavityParams& params, double t_max, int count, int stride) {
    const auto grid = linspace(0.0, t_max, count);
    std::vector<double> neg(grid.size());
    std::transform(grid.begin(), grid.end(), neg.begin(), [](double t) { return -t; });
    const auto ret = decay_trace(params, grid, TraceMethod::path_series, Branch::retarded);
    const auto adv = decay_trace(params, neg, TraceMethod::path_series, Branch::advanced);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(adv.values[i]) - std::abs(ret.values[i])));
    if (stride > 0) {
        std::vector<double> sub, subneg;
        for (std::size_t i = 0; i < grid.size(); i += stride) {
            sub.push_back(grid[i]);
            subneg.push_back(-grid[i]);
        }
        const auto r = decay_trace(params, sub, TraceMethod::contour_oracle, Branch::retarded);
        const auto a = decay_trace(params, subneg, TraceMethod::contour_oracle, Branch::advanced);
        for (std::size_t i = 0; i < sub.size(); ++i)
            worst = std::max(worst, std::abs(std::abs(a.values[i]) - std::abs(r.values[i])));
    }
    return worst;
}

double causality_deviation(const CavityParams& params, double t_max, int count) {
    const PathSeriesTable full(params);
    double worst = 0.0;
    for (double t : linspace(0.0, t_max, count)) {
        CavityParams p = params;
        p.m_max = std::min(params.m_max, int(std::floor(t)) + 1);
        const auto a = path_series_amplitude(full, t).value;
        const auto b = path_series_amplitude(p, t).value;
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

double fitted_decay_ratio(const CavityParams& params, double t0, double t1, int count) {
    const auto grid = linspace(t0, t1, count);
    const auto tr = decay_trace(params, grid, TraceMethod::path_series);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double y = std::log(std::norm(tr.values[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(grid.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope / params.gamma_s_T;
}

double bounce_departure(const CavityParams& params, double t_over_T) {
    const auto a = path_series_amplitude(params, t_over_T).value;
    return std::abs(a - std::exp(-0.5 * params.gamma_s_T * t_over_T));
}

double m0_shape_deviation() {
    auto f = [](double w) {
        const double y = std::exp(w);
        const double a = 1.0 + y;
        return y * 6.0 * y / (a * a * a * a);
    };
    return std::abs(quad::integrate(f, -45.0, 45.0, 1e-15, 1e-14, 20000).value - 1.0);
}

double modulation_deviation(const CavityParams& base, int n) {
    const double u = pi * (n + 0.5);
    double worst = 0.0;
    for (int m = 1; m <= base.m_max; ++m) worst = std::max(worst, 1.0 - std::abs(std::cos(2.0 * m * (u - 0.5 * pi))));
    return worst;
}

double focal_independence_deviation(const CavityParams& params) {
    double worst = 0.0;
    for (double y : linspace(0.0, 10.0, 201)) {
        const double f1 = 1.0, f2 = 7.25;
        const double h1 = planar_energy_density(params, y, f1) * 4.0 * pi * f1 * f1;
        const double h2 = planar_energy_density(params, y, f2) * 4.0 * pi * f2 * f2;
        worst = std::max(worst, std::abs(h1 - h2));
    }
    return worst;
}

double correction_relative_size(const CavityParams& params) {
    double peak = 0.0, corr = 0.0;
    for (double y : linspace(0.0, 20.0, 8001)) {
        const double a = 1.0 + y;
        peak = std::max(peak, 6.0 * y / (a * a * a * a));
        corr = std::max(corr, std::abs(transverse_correction(params, y)));
    }
    return corr / peak;
}

double u_for_two_s(double v) {
    double lo = 1.0, hi = 1e7;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = std::sqrt(lo * hi);
        (2.0 * specfun::stability(mid) < v ? lo : hi) = mid;
    }
    return hi;
}

double field_reduction_gap(const CavityParams& params, int n) {
    const double two_f = 2.0 * params.u;
    const auto xs = linspace(2.0, 100.0, n);
    const auto es = linspace(0.05, 0.95, n);
    const double t = 0.5 * (xs.back() + es.back()) + params.m_max + 1.0;
    double peak = 0.0, gap = 0.0;
    for (double xi : xs)
        for (double eta : es) {
            const ParabolicPoint p{xi * two_f, eta * two_f, 0.0};
            const auto full = one_photon_amplitude(params, p, t).amplitude;
            peak = std::max(peak, std::abs(full));
            gap = std::max(gap, std::abs(full - simplified_amplitude(params, p, t)));
        }
    return gap / peak;
}

} // namespace paraqed::checks
