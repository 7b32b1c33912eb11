// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "cli.hpp"
#include "paraqed/dynamics.hpp"
#include "paraqed/photon.hpp"
#include "paraqed/sweep.hpp"

using namespace paraqed;
using specfun::pi;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Verdict()> body;
};

std::string g(double x) { return fmt::format("{:.3g}", x); }

CavityParams at(double u, double gamma_s_T = 0.0) {
    CavityParams p;
    p.u = u;
    p.gamma_s_T = gamma_s_T;
    return p;
}

Verdict exact_modes() {
    const double worst = checks::exact_mode_alpha(CavityParams{}, 10);
    return {worst < 1e-8, "max |alpha/k| = " + g(worst) + " (< 1e-8)"};
}

Verdict normalization() {
    double ident = 0.0;
    for (double u : {pi / 2, 5.0, 20.0}) ident = std::max(ident, checks::exact_norm_identity(CavityParams{}, u));
    const auto gap = checks::worst_norm_gap(CavityParams{}, linspace(10.0, 20.0, 41));
    return {ident <= 1e-8 && gap.worst <= 0.02,
            fmt::format("alpha=0 identity rel {} (<= 1e-8); exact vs semiclassical worst {} at u = {} (<= 0.02)", g(ident),
                        g(gap.worst), g(gap.u))};
}

Verdict eikonal() {
    const auto e = checks::eikonal_gap(CavityParams{}, linspace(0.5, 15.0, 200), {0, 1, 10});
    return {e.worst <= 0.05, fmt::format("worst |exact - eikonal| {} at u = {}, n = {} over {} points (<= 0.05)",
                                         g(e.worst), g(e.u), e.n, e.points)};
}

Verdict rates() {
    const auto us = linspace(0.2, 20.0, 400);
    const auto pts = rate_sweep(CavityParams{}, us, true, true);
    double worst = 0.0, worst_u = 0.0, far = 0.0;
    int over = 0, counted = 0;
    double amp_a = 0.0, amp_b = 0.0;  // max |Gamma/Gamma_s - 1| on [15, 17.5) and [17.5, 20]
    for (const auto& p : pts) {
        if (p.u >= pi / 2) {
            ++counted;
            const double d = std::abs(*p.exact - *p.semiclassical) / *p.exact;
            if (d > 0.02) ++over;
            if (d > worst) {
                worst = d;
                worst_u = p.u;
            }
        }
        if (p.u >= 15.0) {
            const double dev = std::abs(*p.exact - 1.0);
            far = std::max(far, dev);
            (p.u < 17.5 ? amp_a : amp_b) = std::max(p.u < 17.5 ? amp_a : amp_b, dev);
        }
    }
    const double small = rate_exact(at(0.05)).ratio_total;
    const bool ok = worst <= 0.02 && small < 1e-3 && far <= 0.05 && amp_b < amp_a;
    return {ok, fmt::format("rel diff worst {} at u = {}, {}/{} points above 2%; rate(0.05) = {}; "
                            "max |rate - 1| for u >= 15 = {}; oscillation {} -> {}",
                            g(worst), g(worst_u), over, counted, g(small), g(far), g(amp_a), g(amp_b))};
}

Verdict kernels() {
    const double e = checks::kernel_quadrature_deviation(specfun::sinh_kernel_even, true);
    const double o = checks::kernel_quadrature_deviation(specfun::sinh_kernel_odd, false);
    const bool limits = specfun::sinh_kernel_even(0.0) == pi * pi / 3.0 && specfun::sinh_kernel_odd(0.0) == pi * pi / 2.0;
    return {e <= 1e-10 && o <= 1e-10 && limits,
            fmt::format("even {} odd {} (<= 1e-10); beta = 0 limits {}", g(e), g(o), limits ? "exact" : "wrong")};
}

Verdict resonance() {
    const double d = checks::resonance_identity_deviation(CavityParams{}, {pi / 2, 5.0, 12.0});
    return {d <= 1e-8, "max |-2 Im Sigma - rate| = " + g(d) + " (<= 1e-8)"};
}

Verdict fig4() {
    double gap = 0.0;
    for (double gm : {0.01, 5.0}) gap = std::max(gap, checks::oracle_gap(at(pi / 2, gm), 5.0, 501));
    const auto slow = at(pi / 2, 0.01);
    const double fitted = checks::fitted_decay_ratio(slow, 1.0, 100.0, 991);
    const double expect = rate_semiclassical(slow).ratio_total;
    const double slope_err = std::abs(fitted - expect) / expect;
    // First grid point after T on the 0.01 T grid (501 points), and on linspace(0, 5, 500).
    const double depart = checks::bounce_departure(at(pi / 2, 5.0), 1.01);
    const double coarse = checks::bounce_departure(at(pi / 2, 5.0), 500.0 / 499.0);
    const bool ok = gap <= 1e-3 && slope_err <= 0.02 && depart > 10.0 * 1e-3;
    return {ok, fmt::format("|path - contour| max {} (<= 1e-3); fitted rate {} vs {} rel {} (<= 0.02); "
                            "|A - A_free| at 1.01 T = {} (> 1e-2; {} at 1.002 T)",
                            g(gap), g(fitted), g(expect), g(slope_err), g(depart), g(coarse))};
}

Verdict reversal() {
    double d = 0.0;
    for (double gm : {0.01, 5.0}) d = std::max(d, checks::time_reversal_deviation(at(pi / 2, gm), 5.0, 501, 10));
    return {d <= 1e-10, "max ||A-(-t)| - |A+(t)|| = " + g(d) + " (<= 1e-10)"};
}

Verdict fig5() {
    double norm = 0.0;
    for (int n : {0, 1}) norm = std::max(norm, distribution_norm_check(at(pi * (n + 0.5))));
    const double c0 = checks::correction_relative_size(at(pi / 2));
    const double c1 = checks::correction_relative_size(at(1.5 * pi));
    const double ratio = c0 / c1;
    return {norm <= 1e-6 && ratio >= 10.0,
            fmt::format("|int I - 1| = {} (<= 1e-6); correction/peak n=0 {} n=1 {}, ratio {} (>= 10)", g(norm), g(c0),
                        g(c1), g(ratio))};
}

Verdict large_s() {
    double worst = 0.0, worst_v = 0.0;
    for (double v : {6.0, 8.0, 11.755}) {
        const double d = checks::field_reduction_gap(at(checks::u_for_two_s(v), 1e-3), 50);
        if (d > worst) {
            worst = d;
            worst_v = v;
        }
    }
    return {worst <= 1e-3, fmt::format("max |full - simplified| / peak = {} at 2S = {} (<= 1e-3)", g(worst), g(worst_v))};
}

Verdict determinism() {
    auto once = [](std::vector<std::string> args) {
        args.insert(args.begin(), "paraqed");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int s = cli::run(int(argv.size()), argv.data(), out, err);
        return std::make_pair(s, out.str());
    };
    const std::vector<std::vector<std::string>> runs = {
        {"rate", "--u-sweep", "0.2:20:400", "--method", "both"},
        {"decay", "--n", "0", "--gamma-s-T", "0.01,5", "--t", "0:5:500", "--method", "path,oracle"},
        {"quantize", "--u-sweep", "0.5:15:200", "--n", "0,1,10"},
    };
    std::size_t bytes = 0;
    for (const auto& r : runs) {
        const auto a = once(r), b = once(r);
        if (a.first != 0 || a != b) return {false, "outputs differ for " + r.front()};
        bytes += a.second.size();
    }
    return {true, fmt::format("3 commands, {} bytes, identical on repeat", bytes)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "exact alpha = 0 family", 1.0, exact_modes},
        {2, "normalization cross-check", 1.0, normalization},
        {3, "separation constants vs linear eikonal", 30.0, eikonal},
        {4, "decay rate, exact vs semiclassical", 120.0, rates},
        {5, "closed-form kernels", 1.0, kernels},
        {6, "self-energy / rate identity", 1.0, resonance},
        {7, "time evolution and contour oracle", 300.0, fig4},
        {8, "time reversal", 10.0, reversal},
        {9, "transverse profile and normalization", 10.0, fig5},
        {10, "large-stability field reduction", 30.0, large_s},
        {11, "determinism", 600.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = v.pass && in_time;
        if (!pass) ++failed;
        fmt::print("[{}] criterion {:>2}: {}: {}; {:.2f} s (budget {} s{})\n", pass ? "PASS" : "FAIL", c.id, c.title,
                   v.detail, secs, c.budget_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
