#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <random>

#include "paraqed/errors.hpp"
#include "paraqed/photon.hpp"
#include "paraqed/sweep.hpp"

using namespace paraqed;
using specfun::pi;

namespace {

CavityParams resonant(int n, int m_max = 20) {
    CavityParams p;
    p.u = pi * (n + 0.5);
    p.m_max = m_max;
    return p;
}

} // namespace

TEST_CASE("transverse shape against the high-precision oracle") {
    // tests/oracles/decay_oracle.py, h at the M = 0 peak y = 1/3.
    CHECK(transverse_shape(resonant(0), 1.0 / 3.0) == doctest::Approx(0.71726635590235543).epsilon(1e-12));
    CHECK(transverse_shape(resonant(1), 1.0 / 3.0) == doctest::Approx(0.64097895872770361).epsilon(1e-12));
}

TEST_CASE("plane integral is one") {
    for (int n : {0, 1, 2}) {
        for (int m : {0, 1, 10, 20}) {
            CAPTURE(n);
            CAPTURE(m);
            CHECK(distribution_norm_check(resonant(n, m)) <= 1e-6);
        }
    }
    // Off resonance the modulation changes sign but the identity holds.
    CavityParams p;
    p.u = 2.3;
    CHECK(distribution_norm_check(p) <= 1e-6);
}

TEST_CASE("plane integral against an independent quadrature") {
    const auto p = resonant(0);
    boost::math::quadrature::exp_sinh<double> q;
    const double direct = q.integrate([&](double y) { return transverse_shape(p, y); }, 1e-14);
    CHECK(direct / rate_semiclassical(p).ratio_total == doctest::Approx(plane_integral(p)).epsilon(1e-9));
}

TEST_CASE("M = 0 shape integrates to one") {
    boost::math::quadrature::exp_sinh<double> q;
    const double v = q.integrate([](double y) { return 6.0 * y / std::pow(1.0 + y, 4); }, 1e-15);
    CHECK(std::abs(v - 1.0) < 1e-10);
    CHECK(transverse_shape(resonant(0, 0), 2.0) == doctest::Approx(12.0 / 81.0).epsilon(1e-15));
}

TEST_CASE("n = 1 correction is much smaller than n = 0") {
    double c0 = 0.0, c1 = 0.0;
    for (double y : linspace(0.0, 20.0, 4001)) {
        c0 = std::max(c0, std::abs(transverse_correction(resonant(0), y)));
        c1 = std::max(c1, std::abs(transverse_correction(resonant(1), y)));
    }
    CHECK(c1 < c0);
    CHECK(c1 / c0 < 0.2);
}

TEST_CASE("shape does not depend on the focal length") {
    const auto p = resonant(0);
    for (double y : {0.1, 1.0, 4.0}) {
        const double a = planar_energy_density(p, y, 1.0) * 4.0 * pi;
        const double b = planar_energy_density(p, y, 3.0) * 4.0 * pi * 9.0;
        CHECK(a == doctest::Approx(b).epsilon(1e-15));
    }
}

TEST_CASE("transverse distribution serial equals parallel") {
    const auto ys = linspace(0.0, 6.0, 301);
    const auto s = transverse_distribution(resonant(0), ys, Execution::serial);
    const auto q = transverse_distribution(resonant(0), ys, Execution::parallel);
    CHECK(s.intensity == q.intensity);
    CHECK(s.integral == q.integral);
    CHECK(s.m_max == 20);
    CHECK_THROWS_AS(transverse_distribution(resonant(0), {-1.0}), InvalidParameter);
}

TEST_CASE("field is causal") {
    CavityParams p = resonant(0);
    p.gamma_s_T = 0.1;
    const ParabolicPoint pt{40.0, 2.0, 0.0};
    // Direct arrival at (xi + eta)/2 = 21 in units of 1/k0, i.e. t/T = 21 / pi.
    const double arrival = 21.0 / (2.0 * p.u);
    CHECK(one_photon_amplitude(p, pt, arrival * 0.999).amplitude == 0.0);
    CHECK(one_photon_amplitude(p, pt, arrival * 1.001).amplitude != 0.0);
    CHECK(simplified_amplitude(p, pt, arrival * 0.999) == 0.0);
    const auto s = one_photon_amplitude(p, ParabolicPoint{0.0, 2.0, 0.0}, 5.0);
    CHECK(s.amplitude == 0.0);
}

TEST_CASE("field time reversal and flags") {
    CavityParams p = resonant(3);
    p.gamma_s_T = 0.01;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(1.0, 60.0);
    for (int i = 0; i < 50; ++i) {
        const ParabolicPoint pt{c(rng), c(rng), 0.0};
        const auto r = one_photon_amplitude(p, pt, 9.0, Branch::retarded);
        const auto a = one_photon_amplitude(p, pt, -9.0, Branch::advanced);
        CHECK(std::abs(a.amplitude - std::conj(r.amplitude)) < 1e-14);
        CHECK(r.radiation_zone == (std::max(pt.xi, pt.eta) >= 10.0));
        CHECK(r.slow_decay);
    }
}

TEST_CASE("large stability: full field matches the two-term form") {
    CavityParams p;
    p.u = 35757.0;  // 2 S ~ 11.8
    p.gamma_s_T = 1e-3;
    const double two_f = 2.0 * p.u;
    const double t = 0.5 * (100.0 + 0.95) + p.m_max + 1.0;
    double peak = 0.0, gap = 0.0;
    for (double xi : linspace(2.0, 100.0, 25))
        for (double eta : linspace(0.05, 0.95, 25)) {
            const ParabolicPoint pt{xi * two_f, eta * two_f, 0.0};
            const auto full = one_photon_amplitude(p, pt, t).amplitude;
            peak = std::max(peak, std::abs(full));
            gap = std::max(gap, std::abs(full - simplified_amplitude(p, pt, t)));
        }
    CHECK(gap / peak < 1e-3);
}
