#pragma once

// Special functions for the parabolic-mirror problem: the regular L = 0
// Coulomb wave function, its phase, the stability function S(u), and the two
// sinh-kernel Fourier integrals that close the semiclassical x-integrals.

#include <optional>

namespace paraqed::specfun {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.5772156649015328606;
inline constexpr double default_tol = 1e-10;

enum class CoulombRegime { series, asymptotic };

struct CoulombEval {
    double value = 0.0;       // F0(mu, rho)
    double derivative = 0.0;  // dF0/drho
    CoulombRegime regime = CoulombRegime::series;
    double est_error = 0.0;   // absolute, on value and derivative
};

/// Regular Coulomb function F0(mu, rho) solving F'' + (1 - 2 mu / rho) F = 0,
/// normalized so that F0 ~ sin(coulomb_phase(mu, rho)) for large rho.
///
/// For rho <= max(10, 2|mu|) the ascending power series is used, continued
/// outward by re-expansion about regular points so that no single expansion
/// suffers catastrophic cancellation. Beyond that the asymptotic sine-phase
/// expansion is tried first and the series is the fallback. Throws
/// NonConvergence when neither meets tol.
CoulombEval coulomb_f0(double mu, double rho, double tol = default_tol);

/// Force the series regime (used for overlap checks).
CoulombEval coulomb_f0_series(double mu, double rho);

/// Force the asymptotic regime; nullopt when the expansion cannot reach tol.
std::optional<CoulombEval> coulomb_f0_asymptotic(double mu, double rho, double tol = default_tol);

/// C0(mu) = sqrt(2 pi mu / (exp(2 pi mu) - 1)), the small-rho slope of F0.
double coulomb_normalization(double mu);

/// Continuous branch of arg Gamma(1 + i mu) (not reduced modulo 2 pi).
double arg_gamma_one_plus_i(double mu);

/// Phi(mu, rho) = rho - mu ln(2 rho) + arg Gamma(1 + i mu).
///
/// arg Gamma is evaluated exactly for every mu; the small-|mu| rule
/// arg Gamma(1 + i mu) ~ -gamma mu is available separately and never switched
/// in silently.
double coulomb_phase(double mu, double rho);

/// -gamma * mu, the leading small-|mu| behaviour of arg Gamma(1 + i mu).
inline double arg_gamma_small_mu(double mu) { return -euler_gamma * mu; }

/// Pruefer angle theta = atan2(F0, F0') continued from theta(0) = 0. It is
/// independent of the normalization of F0 and strictly increasing in -mu,
/// which makes it the natural quantity for counting boundary-condition roots:
/// dF0/drho vanishes exactly where theta = pi/2 + j pi.
double coulomb_prufer_angle(double mu, double rho);

struct StabilityValue {
    double u = 0.0;
    double s = 0.0;
};

/// S(u) = int_0^u sin^2(y)/y dy.
StabilityValue stability_function(double u, double tol = default_tol);

/// Shorthand for stability_function(u).s.
double stability(double u);

/// int_R x^2/sinh^2(x) exp(i beta x / pi) dx = pi^2 [(b coth b - 1)/sinh^2 b], b = beta/2.
double sinh_kernel_even(double beta);

/// int_R x/sinh(x) exp(i beta x / pi) dx = pi^2 / (2 cosh^2(beta/2)).
double sinh_kernel_odd(double beta);

/// (b coth b - 1)/sinh^2 b, i.e. sinh_kernel_even(2b)/pi^2, with the b -> 0 limit 1/3.
double coth_sinh_weight(double b);

/// x^2/sinh^2 x with the x -> 0 limit 1.
double x_over_sinh_squared(double x);

/// 1/(2 cosh^2 x), overflow-free for large |x|.
double half_sech_squared(double x);

double sine_integral(double x);
double cosine_integral(double x);

} // namespace paraqed::specfun
