#include "paraqed/modes.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "paraqed/errors.hpp"
#include "paraqed/quadrature.hpp"

namespace paraqed {

using specfun::pi;

ParabolicPoint to_parabolic(double x, double y, double z) {
    const double rho2 = x * x + y * y;
    const double r = std::sqrt(rho2 + z * z);
    ParabolicPoint p;
    // xi = r + z, eta = r - z; take the difference form on the side where it cancels.
    if (z >= 0.0) {
        p.xi = r + z;
        p.eta = p.xi > 0.0 ? rho2 / p.xi : 0.0;
    } else {
        p.eta = r - z;
        p.xi = rho2 / p.eta;
    }
    if (rho2 > 0.0) {
        double phi = std::atan2(y, x);
        if (phi < 0.0) phi += 2.0 * pi;
        if (phi >= 2.0 * pi) phi = 0.0;
        p.phi = phi;
    }
    return p;
}

CartesianPoint to_cartesian(const ParabolicPoint& p) {
    const double rho = std::sqrt(p.xi * p.eta);
    return {rho * std::cos(p.phi), rho * std::sin(p.phi), 0.5 * (p.xi - p.eta)};
}

void CavityParams::validate() const {
    if (!(u > 0.0) || !std::isfinite(u)) throw InvalidParameter("u must be positive and finite");
    if (!(gamma_s_T >= 0.0) || !std::isfinite(gamma_s_T)) throw InvalidParameter("gamma_s_T must be nonnegative");
    if (m_max < 0) throw InvalidParameter("m_max must be nonnegative");
    if (n_max < 1) throw InvalidParameter("n_max must be at least 1");
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
}

ChiValue chi(double alpha_over_k, double s, ChiBranch branch, double tol) {
    const double mu = branch == ChiBranch::eta ? -alpha_over_k : alpha_over_k;
    const auto f = specfun::coulomb_f0(mu, s, tol);
    const double c = std::sqrt(4.0 / pi);
    return {c * f.value, c * f.derivative};
}

double boundary_residual(double u, double alpha_over_k, int n) {
    return specfun::coulomb_prufer_angle(-alpha_over_k, u) - (0.5 + n) * pi;
}

double eikonal_linear(const CavityParams& params, double x) {
    return params.u / pi - 0.5 + x * 2.0 * specfun::stability(params.u) / (pi * pi);
}

double eikonal_alpha_over_k(const CavityParams& params, double n) {
    const double slope = 2.0 * specfun::stability(params.u) / (pi * pi);
    return (n - params.u / pi + 0.5) / slope / pi;
}

QuantizedMode solve_separation_constant(const CavityParams& params, int n) {
    params.validate();
    if (n < 0) throw InvalidParameter("quantum number must be nonnegative");
    const double u = params.u;
    const double a0 = eikonal_alpha_over_k(params, n);
    // One quantum of n in alpha/k according to the linear eikonal.
    const double spacing = pi / (2.0 * specfun::stability(u));

    auto residual = [&](double a) { return boundary_residual(u, a, n); };

    double lo = a0 - 3.0 * spacing;
    double hi = a0 + 3.0 * spacing;
    double rlo = residual(lo);
    double rhi = residual(hi);
    double width = 3.0 * spacing;
    for (int expand = 0; expand < 5 && rlo > 0.0; ++expand) {
        width *= 2.0;
        hi = lo, rhi = rlo;
        lo = a0 - width;
        rlo = residual(lo);
    }
    for (int expand = 0; expand < 5 && rhi < 0.0; ++expand) {
        width *= 2.0;
        lo = hi, rlo = rhi;
        hi = a0 + width;
        rhi = residual(hi);
    }
    if (rlo > 0.0 || rhi < 0.0) {
        throw RootNotBracketed("quantize: no sign change for n=" + std::to_string(n) + " at u=" + std::to_string(u),
                               lo, hi);
    }

    double root = 0.0;
    if (rlo == 0.0) {
        root = lo;
    } else if (rhi == 0.0) {
        root = hi;
    } else {
        // The residual is an angle with O(1) slope, so a bracket of 1e-14 in
        // alpha/k keeps |theta - target| far below tol.
        auto done = [](double a, double b) { return std::abs(b - a) <= 1e-14 * std::max(1.0, std::abs(a)); };
        std::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(residual, lo, hi, rlo, rhi, done, iters);
        root = 0.5 * (bracket.first + bracket.second);
    }

    QuantizedMode m;
    m.n = n;
    m.alpha_over_k = root;
    m.residual = std::abs(std::cos(specfun::coulomb_prufer_angle(-root, u)));
    m.below_fundamental = u < 0.5 * pi;
    if (m.residual > params.tol) {
        throw NonConvergence("quantize: residual " + std::to_string(m.residual) + " above tol for n=" +
                             std::to_string(n));
    }
    return m;
}

double normalization_exact(const CavityParams& params, const QuantizedMode& mode) {
    const double mu = -mode.alpha_over_k;
    auto integrand = [&](double s) {
        const double f = specfun::coulomb_f0(mu, s, params.tol).value;
        return f * f / s;
    };
    const auto r = quad::integrate(integrand, 0.0, params.u, 0.01 * params.tol, 1e-13);
    if (!r.converged) throw QuadratureFailure("normalization_exact: quadrature did not converge", r.abs_error);
    return 4.0 / pi * r.value;
}

QuantizedMode quantize(const CavityParams& params, int n) {
    QuantizedMode m = solve_separation_constant(params, n);
    m.norm = normalization_exact(params, m);
    return m;
}

SemiclassicalNorm normalization_semiclassical(const CavityParams& params, const QuantizedMode&) {
    // N = 2 dn/dalpha = 2 (2 S / pi^2)(pi / k) for the linear eikonal.
    return {4.0 * specfun::stability(params.u) / pi, params.u >= 0.5 * pi};
}

} // namespace paraqed
