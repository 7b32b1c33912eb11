#pragma once

// Batch drivers over u (and over the time or y grid through the module
// functions that take an Execution argument). Outputs are in input order and
// identical between Execution::serial and Execution::parallel.

#include <optional>
#include <string>
#include <vector>

#include "paraqed/decay.hpp"
#include "paraqed/execution.hpp"
#include "paraqed/modes.hpp"

namespace paraqed {

/// start:stop:count, endpoints included.
std::vector<double> linspace(double start, double stop, int count);

struct RatePoint {
    double u = 0.0;
    std::optional<double> exact;
    std::optional<double> semiclassical;
};

RatePoint rate_point(const CavityParams& base, double u, bool exact, bool semiclassical);

std::vector<RatePoint> rate_sweep(const CavityParams& base, const std::vector<double>& us, bool exact,
                                  bool semiclassical, Execution exec = Execution::parallel);

struct AlphaPoint {
    double u = 0.0;
    int n = 0;
    double alpha_over_k = 0.0;
    double eikonal = 0.0;  // linear-eikonal prediction
    double norm = 0.0;
    double residual = 0.0;
};

std::vector<AlphaPoint> alpha_sweep(const CavityParams& base, const std::vector<double>& us,
                                    const std::vector<int>& ns, bool with_norm = false,
                                    Execution exec = Execution::parallel);

} // namespace paraqed
