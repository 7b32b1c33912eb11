#pragma once

// Spontaneous decay: the exact mode sum, the semiclassical closed form, the
// semiclassical self-energy and the pole approximation. Rates are in units of
// Gamma_s, detunings (Lambda/hbar - omega_0) in units of Gamma_s, times in
// units of T = 2f/c.

#include <complex>
#include <vector>

#include "paraqed/modes.hpp"

namespace paraqed {

enum class Branch { retarded, advanced };

inline int branch_sign(Branch b) { return b == Branch::retarded ? 1 : -1; }

/// (3/pi^2) x^2 / sinh^2 x, the squared dipole coupling per unit x.
double coupling_weight(double x);

/// 3 k(2 M S(u)), the x-integrated weight of an M-fold reflected path.
double path_kernel(double stability, int m);

enum class RateMethod { exact_sum, semiclassical };

struct RateTerm {
    int index = 0;  // M for semiclassical, n for exact_sum
    double contribution = 0.0;
};

struct RateBreakdown {
    double ratio_total = 0.0;
    std::vector<RateTerm> m_terms;
    RateMethod method = RateMethod::semiclassical;
    double truncation_bound = 0.0;
    bool valid = true;  // semiclassical: u >= pi/2
    std::vector<QuantizedMode> modes;  // exact_sum only
};

/// Gamma/Gamma_s = (6/pi) sum_n (x_n/sinh x_n)^2 / (k N_n), x_n = pi alpha_n/k.
/// Modes are added outward from the one nearest x = 0 until the weight
/// (x/sinh x)^2 falls below 1e-12 on both sides.
RateBreakdown rate_exact(const CavityParams& params);

/// 1 + sum_{M=1}^{m_max} 6 cos(2M(u - pi/2)) k(2 M S(u)).
RateBreakdown rate_semiclassical(const CavityParams& params);

struct SelfEnergyEval {
    double lambda_rel = 0.0;
    std::complex<double> value;  // units of hbar Gamma_s
    Branch branch = Branch::retarded;
};

/// Sigma(s) = -+(i/2)[1 + 6 sum_M k(2MS) exp(+-i M (2 pi n0 + Gamma_s T s))]
/// with n0 = u/pi - 1/2 and M = 1..m_max.
SelfEnergyEval self_energy(const CavityParams& params, double lambda_rel, Branch branch = Branch::retarded);

/// Precomputed kernels so the self-energy can be sampled cheaply.
class SelfEnergy {
public:
    explicit SelfEnergy(const CavityParams& params);

    std::complex<double> operator()(std::complex<double> s, Branch branch) const;

    /// dSigma/ds on the real axis.
    std::complex<double> slope(double s, Branch branch) const;

    double phase0() const { return phase0_; }  // 2 pi n0
    double tau() const { return tau_; }        // Gamma_s T
    const std::vector<double>& kernels() const { return k_; }  // 3 k(2MS), M = 1..m_max

private:
    double phase0_;
    double tau_;
    std::vector<double> k_;
};

/// Resonant derivative of the retarded self-energy, for the slow-variation check.
std::complex<double> self_energy_slope(const CavityParams& params);

struct PoleAmplitude {
    std::complex<double> value;
    double rate = 0.0;   // Gamma/Gamma_s used
    double shift = 0.0;  // Re Sigma(0) in Gamma_s
    bool valid = true;   // gamma_s_T < 0.1
};

/// exp(-i Delta Gamma_s t) exp(-|t| Gamma/2) with t = t_over_T * T; the
/// advanced branch is the complex conjugate of the retarded one at -t.
PoleAmplitude pole_amplitude(const CavityParams& params, double t_over_T, Branch branch = Branch::retarded);

} // namespace paraqed
