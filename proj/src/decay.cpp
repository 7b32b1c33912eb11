#include "paraqed/decay.hpp"

#include <cmath>
#include <string>

#include "paraqed/errors.hpp"

namespace paraqed {

using specfun::pi;

double coupling_weight(double x) { return 3.0 / (pi * pi) * specfun::x_over_sinh_squared(x); }

double path_kernel(double stability, int m) { return 3.0 * specfun::coth_sinh_weight(2.0 * m * stability); }

namespace {

constexpr double weight_cutoff = 1e-12;

double mode_weight(double alpha_over_k) { return specfun::x_over_sinh_squared(pi * alpha_over_k); }

} // namespace

RateBreakdown rate_exact(const CavityParams& params) {
    params.validate();
    RateBreakdown out;
    out.method = RateMethod::exact_sum;
    const int centre = static_cast<int>(std::lround(std::max(0.0, params.u / pi - 0.5)));

    double total = 0.0;
    double tail = 0.0;
    auto add = [&](int n, double& weight) {
        QuantizedMode m = solve_separation_constant(params, n);
        weight = mode_weight(m.alpha_over_k);
        if (weight < weight_cutoff) return false;
        m.norm = normalization_exact(params, m);
        const double c = 6.0 / pi * weight / m.norm;
        total += c;
        out.m_terms.push_back({n, c});
        out.modes.push_back(m);
        return true;
    };
    // The per-mode weights fall off geometrically away from x = 0; bound the
    // rest by the first rejected term over (1 - ratio).
    const double norm_sc = 4.0 * specfun::stability(params.u) / pi;
    auto side_bound = [&](double w_stop, double w_prev) {
        const double r = w_prev > 0.0 ? std::min(0.5, w_stop / w_prev) : 0.5;
        return 6.0 / pi * w_stop / norm_sc / (1.0 - r);
    };

    double w = 0.0, w_prev = 0.0;
    int count = 0;
    for (int n = centre;; ++n) {
        w_prev = w;
        if (!add(n, w)) {
            tail += side_bound(w, w_prev);
            break;
        }
        if (++count >= params.n_max) {
            tail += side_bound(w, w_prev) * 2.0;
            break;
        }
    }
    w = 0.0, count = 0;
    for (int n = centre - 1; n >= 0; --n) {
        w_prev = w;
        if (!add(n, w)) {
            tail += side_bound(w, w_prev);
            break;
        }
        if (++count >= params.n_max) {
            tail += side_bound(w, w_prev) * 2.0;
            break;
        }
    }
    out.ratio_total = total;
    out.truncation_bound = tail;
    return out;
}

RateBreakdown rate_semiclassical(const CavityParams& params) {
    params.validate();
    RateBreakdown out;
    out.method = RateMethod::semiclassical;
    out.valid = params.u >= 0.5 * pi;
    const double s = specfun::stability(params.u);
    double total = 1.0;
    for (int m = 1; m <= params.m_max; ++m) {
        const double c = 2.0 * std::cos(2.0 * m * (params.u - 0.5 * pi)) * path_kernel(s, m);
        total += c;
        out.m_terms.push_back({m, c});
    }
    out.ratio_total = total;

    // |term| <= 6 k(2MS); sum the envelope until it is negligible, then close
    // with a geometric remainder.
    double tail = 0.0;
    double prev = 0.0;
    for (int m = params.m_max + 1; m < params.m_max + 2000000; ++m) {
        const double t = 2.0 * path_kernel(s, m);
        tail += t;
        if (prev > 0.0 && t < 1e-17 * tail) {
            const double r = t / prev;
            if (r < 1.0) tail += t * r / (1.0 - r);
            break;
        }
        prev = t;
    }
    out.truncation_bound = tail;
    return out;
}

SelfEnergy::SelfEnergy(const CavityParams& params)
    : phase0_(2.0 * pi * (params.u / pi - 0.5)), tau_(params.gamma_s_T) {
    params.validate();
    const double s = specfun::stability(params.u);
    k_.reserve(params.m_max);
    for (int m = 1; m <= params.m_max; ++m) k_.push_back(path_kernel(s, m));
}

std::complex<double> SelfEnergy::operator()(std::complex<double> s, Branch branch) const {
    const double sg = branch_sign(branch);
    const std::complex<double> i(0.0, 1.0);
    // exp(i sg M (phase0 + tau s)) by repeated multiplication.
    const std::complex<double> step = std::exp(i * sg * (phase0_ + tau_ * s));
    std::complex<double> e = 1.0;
    std::complex<double> sum = 1.0;
    for (double k : k_) {
        e *= step;
        sum += 2.0 * k * e;
    }
    return -sg * 0.5 * i * sum;
}

std::complex<double> SelfEnergy::slope(double s, Branch branch) const {
    const double sg = branch_sign(branch);
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < k_.size(); ++j) {
        const double m = double(j + 1);
        sum += m * k_[j] * std::exp(i * sg * m * (phase0_ + tau_ * s));
    }
    // d/ds of -sg (i/2) 2 k e^{i sg M (...)} = sg^2 M tau k e^{...}
    return tau_ * sum;
}

SelfEnergyEval self_energy(const CavityParams& params, double lambda_rel, Branch branch) {
    const SelfEnergy se(params);
    return {lambda_rel, se(lambda_rel, branch), branch};
}

std::complex<double> self_energy_slope(const CavityParams& params) {
    return SelfEnergy(params).slope(0.0, Branch::retarded);
}

PoleAmplitude pole_amplitude(const CavityParams& params, double t_over_T, Branch branch) {
    if (branch_sign(branch) * t_over_T < 0.0) {
        throw InvalidParameter("pole_amplitude: retarded amplitudes need t >= 0, advanced t <= 0");
    }
    const SelfEnergy se(params);
    const std::complex<double> sigma = se(0.0, Branch::retarded);
    PoleAmplitude out;
    out.rate = -2.0 * sigma.imag();
    out.shift = sigma.real();
    out.valid = params.gamma_s_T < 0.1;
    const double t = params.gamma_s_T * std::abs(t_over_T);  // Gamma_s |t|
    const std::complex<double> a = std::exp(std::complex<double>(-0.5 * out.rate * t, -out.shift * t));
    out.value = branch == Branch::retarded ? a : std::conj(a);
    return out;
}

} // namespace paraqed
