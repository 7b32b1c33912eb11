#pragma once

// Parabolic geometry and the cavity mode problem. Lengths are in units of
// 1/k, so the mirror (eta = 2f) sits at s = k eta / 2 = u and the only
// geometric parameter is u = k f.

#include <limits>

#include "paraqed/specfun.hpp"

namespace paraqed {

struct ParabolicPoint {
    double xi = 0.0;
    double eta = 0.0;
    double phi = 0.0;  // [0, 2 pi), 0 on the axis
};

struct CartesianPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

ParabolicPoint to_parabolic(double x, double y, double z);
CartesianPoint to_cartesian(const ParabolicPoint& p);

struct CavityParams {
    double u = specfun::pi / 2;   // k f
    double gamma_s_T = 0.0;       // Gamma_s * 2f / c
    int m_max = 20;               // reflections kept
    int n_max = 400;              // cap on modes summed on each side of x = 0
    double tol = specfun::default_tol;

    /// Throws InvalidParameter on any out-of-range field.
    void validate() const;

    /// Gamma_s T < 0.1 u, i.e. Gamma_s << omega_0. Diagnostic only.
    bool rwa_consistent() const { return gamma_s_T < 0.1 * u; }
};

struct QuantizedMode {
    int n = 0;
    double alpha_over_k = 0.0;
    double norm = 0.0;      // k N_{omega,n}
    double residual = 0.0;  // |F0'| / |(F0, F0')| at the mirror
    // u < pi/2: the linear eikonal puts x = 0 below n = 0.
    bool below_fundamental = false;
};

enum class ChiBranch { eta, xi };

struct ChiValue {
    double value = 0.0;
    double derivative = 0.0;  // d/ds
};

/// sqrt(4/pi) F0(-+alpha/k, s) with s = k eta/2 (eta branch, attractive for
/// alpha > 0) or s = k xi/2 (xi branch).
ChiValue chi(double alpha_over_k, double s, ChiBranch branch = ChiBranch::eta,
             double tol = specfun::default_tol);

/// theta(u; alpha/k) - (pi/2 + n pi), strictly increasing in alpha/k.
double boundary_residual(double u, double alpha_over_k, int n);

/// Root of the mirror condition dF0/ds(-alpha/k, u) = 0 with exactly n
/// interior zeros of dF0/ds on (0, u). Does not fill in norm.
QuantizedMode solve_separation_constant(const CavityParams& params, int n);

/// solve_separation_constant plus normalization_exact.
QuantizedMode quantize(const CavityParams& params, int n);

/// k N = (4/pi) int_0^u F0(-alpha/k, s)^2 / s ds.
double normalization_exact(const CavityParams& params, const QuantizedMode& mode);

struct SemiclassicalNorm {
    double value = 0.0;  // k N = 4 S(u) / pi
    bool valid = false;  // u >= pi/2
};

SemiclassicalNorm normalization_semiclassical(const CavityParams& params, const QuantizedMode& mode);

/// n(omega, x) = u/pi - 1/2 + x 2 S(u)/pi^2 with x = pi alpha/k.
double eikonal_linear(const CavityParams& params, double x);

/// alpha/k predicted by the linear eikonal for quantum number n.
double eikonal_alpha_over_k(const CavityParams& params, double n);

} // namespace paraqed
