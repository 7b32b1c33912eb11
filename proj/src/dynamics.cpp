#include "paraqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paraqed/errors.hpp"
#include "paraqed/quadrature.hpp"

namespace paraqed {

using specfun::pi;

namespace {

void check_sign(double t, Branch branch, const char* who) {
    if (branch_sign(branch) * t < 0.0) {
        throw InvalidParameter(std::string(who) + ": retarded amplitudes need t >= 0, advanced t <= 0");
    }
}

std::vector<double> reflection_kernels(const CavityParams& p) {
    const double s = specfun::stability(p.u);
    std::vector<double> k(p.m_max + 1, 0.0);
    for (int m = 1; m <= p.m_max; ++m) k[m] = path_kernel(s, m);
    return k;
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

} // namespace

PathSeriesTable::PathSeriesTable(const CavityParams& params, Combinatorics c)
    : params_(params), phase0_(2.0 * pi * (params.u / pi - 0.5)) {
    params.validate();
    const int mm = params.m_max;
    const std::vector<double> k = reflection_kernels(params);
    p_.assign(mm + 1, std::vector<double>(mm + 1, 0.0));
    p_[0][0] = 1.0;
    if (c == Combinatorics::exact) {
        for (int m = 1; m <= mm; ++m)
            for (int j = 1; j <= m; ++j) {
                double s = 0.0;
                for (int first = 1; first <= m - j + 1; ++first) s += k[first] * p_[m - first][j - 1];
                p_[m][j] = s;
            }
    } else {
        for (int m = 1; m <= mm; ++m)
            for (int j = 1; j <= m; ++j)
                p_[m][j] = binomial(m - 1, j - 1) * k[m - j + 1] * std::pow(k[1], j - 1);
    }
}

std::vector<std::complex<double>> path_series_terms(const PathSeriesTable& table, double t_over_T, Branch branch) {
    check_sign(t_over_T, branch, "path_series_amplitude");
    const CavityParams& p = table.params();
    const double sg = branch_sign(branch);
    const double w = std::abs(t_over_T);
    const double tau = p.gamma_s_T;
    std::vector<std::complex<double>> out(p.m_max + 1, 0.0);
    out[0] = std::exp(-0.5 * tau * w);
    for (int m = 1; m <= p.m_max && w > m; ++m) {
        const double tm = tau * (w - m);
        double power = 1.0;  // tm^j / j!
        double s = 0.0;
        for (int j = 1; j <= m; ++j) {
            power *= tm / j;
            s += (j % 2 ? -1.0 : 1.0) * power * table.coefficient(m, j);
        }
        out[m] = std::polar(std::exp(-0.5 * tm) * s, sg * m * table.phase0());
    }
    return out;
}

PathSeriesValue path_series_amplitude(const PathSeriesTable& table, double t_over_T, Branch branch) {
    const auto terms = path_series_terms(table, t_over_T, branch);
    PathSeriesValue v;
    for (std::size_t m = 0; m < terms.size(); ++m) {
        v.value += terms[m];
        if (m > 0 && std::abs(t_over_T) > double(m)) v.m_used = int(m);
    }
    return v;
}

PathSeriesValue path_series_amplitude(const CavityParams& params, double t_over_T, Branch branch) {
    return path_series_amplitude(PathSeriesTable(params), t_over_T, branch);
}

ContourOracle::ContourOracle(const CavityParams& params, Branch branch, double t_max_over_T, ContourOptions options)
    : params_(params), branch_(branch), t_max_(std::abs(t_max_over_T)), opt_(options) {
    params.validate();
    if (!(opt_.s_cut > 0.0) || !(opt_.delta >= 0.0)) throw InvalidParameter("contour: bad cut or offset");
    const double sg = branch_sign(branch);
    const double tau = params.gamma_s_T;
    const SelfEnergy sigma(params);
    phase0_ = sigma.phase0();
    kernels_ = sigma.kernels();

    // Fastest oscillation e^{-i s (t' - M tau)} among the kernels that matter.
    int m_eff = 0;
    double ksum = 0.0;
    for (std::size_t j = 0; j < kernels_.size(); ++j) {
        ksum += kernels_[j];
        if (kernels_[j] > 1e-16) m_eff = int(j + 1);
    }
    const double omega = tau * t_max_ + tau * m_eff;
    const double h = std::min(0.25, 3.0 / std::max(omega, 1e-300));
    const auto panels = static_cast<std::size_t>(std::ceil(2.0 * opt_.s_cut / h));
    const double width = 2.0 * opt_.s_cut / double(panels);

    x_.reserve(panels * 15);
    wk_.reserve(panels * 15);
    wg_.reserve(panels * 15);
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = -opt_.s_cut + width * double(i);
        const auto pan = quad::gk15::panel(a, i + 1 == panels ? opt_.s_cut : a + width);
        for (int q = 0; q < 15; ++q) {
            x_.push_back(pan.x[q]);
            wk_.push_back(pan.wk[q]);
            wg_.push_back(pan.wg[q]);
        }
    }
    const std::complex<double> i1(0.0, 1.0);
    r_.resize(x_.size());
    for (std::size_t q = 0; q < x_.size(); ++q) {
        const std::complex<double> z(x_[q], sg * opt_.delta);
        r_[q] = i1 / (z - sigma(z, branch)) - i1 / (z + sg * 0.5 * i1);
    }
    // Next order beyond the analytic 1/s^2 tail: |B| (|Sigma| + 1/2) / s^3 on both sides.
    const double sigma_max = 0.5 * (1.0 + 2.0 * ksum);
    tail_bound_ = ksum * (sigma_max + 0.5) / (2.0 * pi * opt_.s_cut * opt_.s_cut);
}

ContourValue ContourOracle::operator()(double t_over_T) const {
    check_sign(t_over_T, branch_, "contour_oracle");
    if (std::abs(t_over_T) > t_max_ * (1.0 + 1e-12)) {
        throw InvalidParameter("contour_oracle: |t| beyond the range the panels were built for");
    }
    if (tail_bound_ > opt_.tol) throw TruncationError("contour_oracle: tail estimate exceeds tolerance", tail_bound_);
    const double sg = branch_sign(branch_);
    const double tau = params_.gamma_s_T;
    const double tp = tau * t_over_T;  // Gamma_s t
    const double damp = std::exp(sg * opt_.delta * tp);

    std::complex<double> kron = 0.0, gauss = 0.0;
    for (std::size_t q = 0; q < x_.size(); ++q) {
        const std::complex<double> term = std::polar(damp, -x_[q] * tp) * r_[q];
        kron += wk_[q] * term;
        gauss += wg_[q] * term;
    }
    const double S = opt_.s_cut;
    std::complex<double> tail = 0.0;
    for (std::size_t j = 0; j < kernels_.size(); ++j) {
        const double m = double(j + 1);
        const double w = std::abs(tp - sg * m * tau);
        const double c = std::cos(w * S) / S - w * (0.5 * pi - specfun::sine_integral(w * S));
        tail += kernels_[j] * std::polar(2.0 * c, sg * m * phase0_);
    }
    ContourValue v;
    v.value = std::exp(-0.5 * std::abs(tp)) + sg / (2.0 * pi) * kron + tail / (2.0 * pi);
    v.tail_bound = tail_bound_;
    v.error_estimate = std::abs(kron - gauss) / (2.0 * pi) + tail_bound_;
    return v;
}

ContourValue contour_oracle(const CavityParams& params, double t_over_T, Branch branch, ContourOptions options) {
    return ContourOracle(params, branch, t_over_T, options)(t_over_T);
}

AmplitudeTrace decay_trace(const CavityParams& params, const std::vector<double>& t_grid, TraceMethod method,
                           Branch branch, Execution exec) {
    params.validate();
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        if (std::abs(t_grid[i + 1]) < std::abs(t_grid[i])) throw InvalidParameter("decay_trace: grid must be sorted");
    }
    for (double t : t_grid) check_sign(t, branch, "decay_trace");

    AmplitudeTrace tr;
    tr.times = t_grid;
    tr.values.assign(t_grid.size(), 0.0);
    tr.method = method;
    tr.branch = branch;
    tr.params = params;
    std::vector<int> used(t_grid.size(), 0);

    auto wrap = [&](std::size_t i, auto&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            throw Error("decay_trace: point " + std::to_string(i) + " (t/T = " + std::to_string(t_grid[i]) +
                        "): " + e.what());
        }
    };

    switch (method) {
    case TraceMethod::path_series: {
        const PathSeriesTable table(params);
        for_each_index(t_grid.size(), exec, [&](std::size_t i) {
            wrap(i, [&] {
                const auto v = path_series_amplitude(table, t_grid[i], branch);
                tr.values[i] = v.value;
                used[i] = v.m_used;
            });
        });
        break;
    }
    case TraceMethod::contour_oracle: {
        double t_max = 0.0;
        for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
        const ContourOracle oracle(params, branch, t_max);
        tr.errors.assign(t_grid.size(), 0.0);
        for_each_index(t_grid.size(), exec, [&](std::size_t i) {
            wrap(i, [&] {
                const auto v = oracle(t_grid[i]);
                tr.values[i] = v.value;
                tr.errors[i] = v.error_estimate;
            });
        });
        break;
    }
    case TraceMethod::pole:
        for_each_index(t_grid.size(), exec, [&](std::size_t i) {
            wrap(i, [&] { tr.values[i] = pole_amplitude(params, t_grid[i], branch).value; });
        });
        break;
    }
    for (int u : used) tr.m_used = std::max(tr.m_used, u);
    return tr;
}

} // namespace paraqed
