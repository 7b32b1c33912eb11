#pragma once

// Time evolution of the excited-state amplitude beyond the pole
// approximation. t is always in units of T = 2f/c; the global phase
// exp(-i(E_g/hbar + omega_0) t) is dropped.

#include <complex>
#include <vector>

#include "paraqed/decay.hpp"
#include "paraqed/execution.hpp"

namespace paraqed {

/// How the M-fold reflection coefficients are combined. exact sums over
/// every ordered composition of M into j reflected legs; binomial keeps only
/// the pattern C(M-1, j-1) K(M-j+1) K(1)^(j-1), which coincides with exact
/// for M <= 3.
enum class Combinatorics { exact, binomial };

class PathSeriesTable {
public:
    explicit PathSeriesTable(const CavityParams& params, Combinatorics c = Combinatorics::exact);

    const CavityParams& params() const { return params_; }
    double phase0() const { return phase0_; }
    /// Coefficient of (-1)^j (Gamma_s (|t| - M T))^j / j! in the M-th bounce.
    double coefficient(int m, int j) const { return p_[m][j]; }

private:
    CavityParams params_;
    double phase0_;
    std::vector<std::vector<double>> p_;
};

struct PathSeriesValue {
    std::complex<double> value;
    int m_used = 0;  // bounces whose gate |t| > M T is open
};

PathSeriesValue path_series_amplitude(const PathSeriesTable& table, double t_over_T, Branch branch = Branch::retarded);
PathSeriesValue path_series_amplitude(const CavityParams& params, double t_over_T, Branch branch = Branch::retarded);

/// Contribution of every M = 0..m_max separately (zero where gated off).
std::vector<std::complex<double>> path_series_terms(const PathSeriesTable& table, double t_over_T,
                                                    Branch branch = Branch::retarded);

struct ContourOptions {
    double s_cut = 400.0;  // |Lambda/hbar - omega_0| cut, in Gamma_s
    double delta = 1e-6;   // +-i0 offset, in Gamma_s
    double tol = 1e-5;     // allowed tail estimate
};

struct ContourValue {
    std::complex<double> value;
    double error_estimate = 0.0;  // panel error plus the tail bound
    double tail_bound = 0.0;
};

/// Numerical inverse Laplace transform on the line Lambda = hbar omega_0 +
/// hbar Gamma_s (s +- i delta). The free Lorentzian is inverted analytically,
/// so only R(s) = i/(s - Sigma(s)) - i/(s +- i/2) is integrated, on fixed
/// Gauss-Kronrod panels sized to the fastest oscillation at |t| <= t_max.
/// The 1/s^2 tail beyond s_cut is added in closed form.
class ContourOracle {
public:
    ContourOracle(const CavityParams& params, Branch branch, double t_max_over_T, ContourOptions options = {});

    /// Throws TruncationError when the tail bound exceeds options.tol and
    /// InvalidParameter when |t| exceeds the panel design range.
    ContourValue operator()(double t_over_T) const;

    std::size_t nodes() const { return x_.size(); }

private:
    CavityParams params_;
    Branch branch_;
    double t_max_;
    ContourOptions opt_;
    std::vector<double> x_, wk_, wg_;
    std::vector<std::complex<double>> r_;  // R at the shifted nodes
    std::vector<double> kernels_;          // 3 k(2MS)
    double phase0_;
    double tail_bound_;
};

ContourValue contour_oracle(const CavityParams& params, double t_over_T, Branch branch = Branch::retarded,
                            ContourOptions options = {});

enum class TraceMethod { path_series, contour_oracle, pole };

struct AmplitudeTrace {
    std::vector<double> times;
    std::vector<std::complex<double>> values;
    std::vector<double> errors;  // contour_oracle only
    TraceMethod method = TraceMethod::path_series;
    Branch branch = Branch::retarded;
    CavityParams params;
    int m_used = 0;  // largest over the grid
};

/// Evaluates the chosen method on a sorted, sign-consistent grid. Errors
/// raised at a point are rethrown as paraqed::Error naming the index.
AmplitudeTrace decay_trace(const CavityParams& params, const std::vector<double>& t_grid, TraceMethod method,
                           Branch branch = Branch::retarded, Execution exec = Execution::parallel);

} // namespace paraqed
