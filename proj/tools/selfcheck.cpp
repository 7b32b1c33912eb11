#include <cmath>

#include "checks.hpp"
#include "cli.hpp"
#include "paraqed/photon.hpp"
#include "paraqed/sweep.hpp"

namespace paraqed::cli {

using specfun::pi;

SelfcheckHooks default_hooks() { return {specfun::sinh_kernel_even, specfun::sinh_kernel_odd}; }

std::vector<CheckRow> selfcheck(const CavityParams& params, const SelfcheckHooks& hooks) {
    params.validate();
    std::vector<CheckRow> rows;
    const bool bounces = params.m_max > 0;
    auto check = [&](const char* name, double measured, double tol) {
        rows.push_back({name, measured <= tol ? "PASS" : "FAIL", measured, tol});
    };
    auto skip = [&](const char* name, double tol) { rows.push_back({name, "SKIP", 0.0, tol}); };

    // Special functions.
    check("coulomb_free_is_sine", checks::coulomb_free_deviation(), 1e-12);
    check("coulomb_regime_overlap", checks::coulomb_overlap_deviation(), 10.0 * 1e-10);
    check("stability_monotone", checks::stability_monotone_violations(), 0.0);
    check("kernel_even_quadrature", checks::kernel_quadrature_deviation(hooks.kernel_even, true), 1e-10);
    check("kernel_odd_quadrature", checks::kernel_quadrature_deviation(hooks.kernel_odd, false), 1e-10);
    check("kernel_even_parity", checks::kernel_parity_deviation(hooks.kernel_even), 0.0);
    check("kernel_odd_parity", checks::kernel_parity_deviation(hooks.kernel_odd), 0.0);
    check("kernel_even_limit", std::abs(hooks.kernel_even(0.0) - pi * pi / 3.0), 0.0);
    check("kernel_odd_limit", std::abs(hooks.kernel_odd(0.0) - pi * pi / 2.0), 0.0);

    // Modes.
    check("exact_sine_modes", checks::exact_mode_alpha(params, 10), 1e-8);
    const auto us = linspace(0.5 * pi, 15.0, 60);
    check("eikonal_band", checks::eikonal_gap(params, us, {0, 1, 10}).worst, 0.05);
    check("norm_semiclassical", checks::worst_norm_gap(params, linspace(10.0, 20.0, 21)).worst, 0.02);
    const auto res = checks::residual_check(params, linspace(0.5, 15.0, 30), {0, 1, 3});
    check("boundary_residual", res.worst_residual, params.tol);
    check("residual_idempotent", res.worst_repeat, params.tol);
    check("coordinate_roundtrip", checks::roundtrip_deviation(1000, 20240611), 1e-12);

    // Rates.
    if (bounces) {
        check("rate_exact_vs_semiclassical",
              checks::rate_gap(params, {0.5 * pi, 1.5 * pi, 5.0, 8.0, 12.0, 20.0}, 0.02).worst, 0.02);
    } else {
        skip("rate_exact_vs_semiclassical", 0.02);
    }
    {
        CavityParams p = params;
        p.m_max = 0;
        check("rate_m0_is_one", std::abs(rate_semiclassical(p).ratio_total - 1.0), 0.0);
    }
    check("resonance_identity", checks::resonance_identity_deviation(params, {0.5 * pi, 5.0, 12.0}), 1e-8);
    if (bounces) {
        check("rate_truncation_bound", checks::truncation_bound_ratio(params, {0.5 * pi, 3.0, 5.0, 12.0}), 1.0);
    } else {
        skip("rate_truncation_bound", 1.0);
    }
    {
        CavityParams p = params;
        p.u = 0.05;
        check("rate_vanishes_small_u", rate_exact(p).ratio_total, 1e-3);
    }

    // Dynamics at the fundamental resonance.
    CavityParams fund = params;
    fund.u = 0.5 * pi;
    if (params.m_max >= 5) {
        double gap = 0.0;
        for (double g : {0.01, 5.0}) {
            fund.gamma_s_T = g;
            gap = std::max(gap, checks::oracle_gap(fund, 5.0, 101));
        }
        check("oracle_equivalence", gap, 1e-3);
    } else {
        skip("oracle_equivalence", 1e-3);
    }
    fund.gamma_s_T = 5.0;
    check("free_envelope", checks::free_envelope_deviation(fund, 5.0, 101), 1e-15);
    check("time_reversal", checks::time_reversal_deviation(fund, 5.0, 101, 10), 1e-10);
    if (bounces) {
        check("bounce_causality", checks::causality_deviation(fund, 5.0, 101), 0.0);
    } else {
        skip("bounce_causality", 0.0);
    }
    fund.gamma_s_T = 0.01;
    {
        const double fit = checks::fitted_decay_ratio(fund, 1.0, 100.0, 991);
        const double expect = rate_semiclassical(fund).ratio_total;
        check("decay_slope", std::abs(fit - expect) / expect, 0.02);
    }

    // Photon distribution.
    double norm = 0.0;
    for (int n : {0, 1}) {
        CavityParams p = params;
        p.u = pi * (n + 0.5);
        norm = std::max(norm, distribution_norm_check(p));
    }
    check("plane_normalization", norm, 1e-6);
    check("m0_shape_integral", checks::m0_shape_deviation(), 1e-10);
    if (bounces) {
        check("modulation_at_resonance", std::max(checks::modulation_deviation(params, 0), checks::modulation_deviation(params, 1)),
              1e-12);
    } else {
        skip("modulation_at_resonance", 1e-12);
    }
    check("shape_focal_independence", checks::focal_independence_deviation(fund), 1e-14);
    if (bounces) {
        CavityParams p = params;
        p.u = checks::u_for_two_s(6.0);
        p.gamma_s_T = 1e-3;
        check("large_stability_reduction", checks::field_reduction_gap(p, 20), 1e-3);
    } else {
        skip("large_stability_reduction", 1e-3);
    }
    return rows;
}

} // namespace paraqed::cli
