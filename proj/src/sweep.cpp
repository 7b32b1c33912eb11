#include "paraqed/sweep.hpp"

#include "paraqed/errors.hpp"

namespace paraqed {

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 2 || !(start < stop)) throw InvalidParameter("sweep needs start < stop and count >= 2");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = start + (stop - start) * double(i) / double(count - 1);
    v.back() = stop;
    return v;
}

RatePoint rate_point(const CavityParams& base, double u, bool exact, bool semiclassical) {
    CavityParams p = base;
    p.u = u;
    RatePoint r;
    r.u = u;
    if (exact) r.exact = rate_exact(p).ratio_total;
    if (semiclassical) r.semiclassical = rate_semiclassical(p).ratio_total;
    return r;
}

std::vector<RatePoint> rate_sweep(const CavityParams& base, const std::vector<double>& us, bool exact,
                                  bool semiclassical, Execution exec) {
    std::vector<RatePoint> out(us.size());
    for_each_index(us.size(), exec, [&](std::size_t i) { out[i] = rate_point(base, us[i], exact, semiclassical); });
    return out;
}

std::vector<AlphaPoint> alpha_sweep(const CavityParams& base, const std::vector<double>& us,
                                    const std::vector<int>& ns, bool with_norm, Execution exec) {
    std::vector<AlphaPoint> out(us.size() * ns.size());
    for_each_index(out.size(), exec, [&](std::size_t k) {
        CavityParams p = base;
        p.u = us[k / ns.size()];
        const int n = ns[k % ns.size()];
        const QuantizedMode m = with_norm ? quantize(p, n) : solve_separation_constant(p, n);
        out[k] = {p.u, n, m.alpha_over_k, eikonal_alpha_over_k(p, n), m.norm, m.residual};
    });
    return out;
}

} // namespace paraqed
