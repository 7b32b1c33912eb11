#pragma once

// Long-time one-photon field and its transverse energy distribution.
// Lengths are in units of 1/k0 (so f = u and T = 2u), t in units of T.
// Field amplitudes are in units of sqrt(3 Gamma_s hbar c / (4 eps0 pi^5 omega0))
// with the global factor exp(i E_g t / hbar) dropped.

#include <complex>
#include <vector>

#include "paraqed/decay.hpp"
#include "paraqed/execution.hpp"
#include "paraqed/modes.hpp"

namespace paraqed {

struct FieldSample {
    ParabolicPoint point;
    double t_over_T = 0.0;
    std::complex<double> amplitude;  // e_phi component
    Branch branch = Branch::retarded;
    bool radiation_zone = true;      // max(xi, eta) >= 10 / k0
    bool slow_decay = true;          // gamma_s_T < 0.1
};

/// Outgoing (first bracket, M >= 0) and reflected (second bracket, M >= 1)
/// bounce sums up to m_max with their arrival gates and decay envelopes.
FieldSample one_photon_amplitude(const CavityParams& params, const ParabolicPoint& p, double t_over_T,
                                 Branch branch = Branch::retarded);

/// Only the direct wave (M = 0, first bracket) and the once-reflected wave
/// (M = 1, second bracket), written in cylindrical variables.
std::complex<double> simplified_amplitude(const CavityParams& params, const ParabolicPoint& p, double t_over_T,
                                          Branch branch = Branch::retarded);

struct TransverseProfile {
    std::vector<double> y_grid;
    std::vector<double> intensity;  // h(y) = pi (2f)^2 I(y) Gamma/Gamma_s
    double integral = 0.0;          // int dphi int rho drho I
    int m_max = 0;
};

/// h(y) = 6y/(1+y)^4 + 12 sum_M cos(2M(u - pi/2)) y e_M / ((1+y)^2 (1 + y e_M)^2),
/// e_M = exp(-2 M v), v = 2 S(u).
double transverse_shape(const CavityParams& params, double y);

/// The M >= 1 part of transverse_shape.
double transverse_correction(const CavityParams& params, double y);

TransverseProfile transverse_distribution(const CavityParams& params, const std::vector<double>& y_grid,
                                          Execution exec = Execution::parallel);

/// I(y) itself for focal length f; equals transverse_shape / (pi (2f)^2) scaled by Gamma_s/Gamma.
double planar_energy_density(const CavityParams& params, double y, double f);

/// int dphi int rho drho I(y), each M-term integrated numerically.
double plane_integral(const CavityParams& params);

/// |plane_integral - 1|.
double distribution_norm_check(const CavityParams& params);

} // namespace paraqed
