#pragma once

// Measurements shared by the self-check and the acceptance run. Each returns
// the raw error (or ratio) so callers can apply their own tolerance.

#include <cstdint>
#include <functional>
#include <vector>

#include "paraqed/decay.hpp"
#include "paraqed/modes.hpp"

namespace paraqed::checks {

using Kernel = std::function<double(double)>;

/// The seven beta values the closed-form kernels are checked at.
const std::vector<double>& kernel_betas();

/// max |F0(0, rho) - sin rho| for rho in [0, 100].
double coulomb_free_deviation();

/// max |series - asymptotic| over a band where both regimes apply.
double coulomb_overlap_deviation();

/// Number of u1 < u2 pairs on a fine grid with S(u1) > S(u2).
int stability_monotone_violations();

/// max over kernel_betas of |kernel(beta) - adaptive quadrature of the defining integral|.
double kernel_quadrature_deviation(const Kernel& kernel, bool even);

/// max |kernel(beta) - kernel(-beta)|.
double kernel_parity_deviation(const Kernel& kernel);

/// max |alpha_n/k| at u = pi(n + 1/2), n = 0..n_top.
double exact_mode_alpha(const CavityParams& base, int n_top);

struct EikonalGap {
    double worst = 0.0;
    double u = 0.0;
    int n = 0;
    int points = 0;  // solved modes with |alpha/k| <= 1
};

/// Worst |exact - linear eikonal| among modes with |alpha/k| <= 1.
EikonalGap eikonal_gap(const CavityParams& base, const std::vector<double>& us, const std::vector<int>& ns);

/// |exact - semiclassical| / exact normalization of the mode nearest x = 0.
double norm_gap(const CavityParams& base, double u);

struct NormGap {
    double worst = 0.0;
    double u = 0.0;
};

NormGap worst_norm_gap(const CavityParams& base, const std::vector<double>& us);

/// |normalization_exact - 4 S / pi| / (4 S / pi) for the alpha = 0 mode at u.
double exact_norm_identity(const CavityParams& base, double u);

struct ResidualCheck {
    double worst_residual = 0.0;
    double worst_repeat = 0.0;  // |residual - residual recomputed from chi'|
};

ResidualCheck residual_check(const CavityParams& base, const std::vector<double>& us, const std::vector<int>& ns);

/// max Cartesian distance after to_parabolic / to_cartesian on random points.
double roundtrip_deviation(int count, std::uint64_t seed);

struct RateGap {
    double worst = 0.0;
    double u = 0.0;
    int over = 0;  // points above the given threshold
};

RateGap rate_gap(const CavityParams& base, const std::vector<double>& us, double threshold);

/// max |-2 Im Sigma+(0) - semiclassical ratio|.
double resonance_identity_deviation(const CavityParams& base, const std::vector<double>& us);

/// Largest ratio of the actual discarded tail (from doubling m_max) to truncation_bound.
double truncation_bound_ratio(const CavityParams& base, const std::vector<double>& us);

/// max |A_path - A_contour| on linspace(0, t_max, count).
double oracle_gap(const CavityParams& params, double t_max, int count);

/// max | |A(t)| - exp(-Gamma_s t / 2) | with m_max = 0.
double free_envelope_deviation(const CavityParams& params, double t_max, int count);

/// max | |A-(-t)| - |A+(t)| | for the path series, and for the contour oracle on every stride-th point.
double time_reversal_deviation(const CavityParams& params, double t_max, int count, int stride);

/// max |A(m_max) - A(floor(t) + 1)| over the grid.
double causality_deviation(const CavityParams& params, double t_max, int count);

/// Gamma / Gamma_s from a least-squares fit of ln|A|^2 over [t0, t1].
double fitted_decay_ratio(const CavityParams& params, double t0, double t1, int count);

/// |A_path - exp(-Gamma_s t / 2)| at t_over_T.
double bounce_departure(const CavityParams& params, double t_over_T);

/// |int 6y/(1+y)^4 dy - 1| by quadrature.
double m0_shape_deviation();

/// max over M of 1 - |cos 2M(u - pi/2)| at u = pi(n + 1/2).
double modulation_deviation(const CavityParams& base, int n);

/// max |h computed through two focal lengths|.
double focal_independence_deviation(const CavityParams& params);

/// max_y |h - h_0| / max_y h_0 (correction relative to the M = 0 peak).
double correction_relative_size(const CavityParams& params);

/// u with 2 S(u) = v.
double u_for_two_s(double v);

/// max |full - simplified| / max |full| on an n x n radiation-zone grid,
/// xi/2f in [2, 100], eta/2f in [0.05, 0.95], once every kept bounce has arrived.
double field_reduction_gap(const CavityParams& params, int n);

} // namespace paraqed::checks
