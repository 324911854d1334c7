#pragma once

#include <array>
#include <functional>
#include <string>

#include "support.hpp"

namespace reglab {

struct IntegralEstimate {
    Cpx value{};
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::string strategy;
    bool budget_ok = true;
};

// Integral over CP^1 of a 2-form given by its dx^dy density on the affine
// chart.  The chart is compactified by z = tan(theta) e^{i phi} and the
// integral evaluated by adaptive tensor Gauss quadrature; cells are pre-split
// at the listed singular points and evaluation inside a 1e-9 band around
// them is rejected (log/dlog singularities are absolutely integrable).
// Deterministic for a fixed budget.
IntegralEstimate integrate_cp1(const std::function<Cpx(Cpx)>& density,
                               const std::vector<Cpx>& singular_points, std::uint64_t budget,
                               double tol);

// Integral over CP^2 of a 4-form by seeded stratified Monte Carlo.  CP^2 is
// partitioned into the three max-coordinate regions; region c is exactly the
// unit bidisk of the chart with homogeneous coordinate c set to 1, so every
// region is bounded and only the integrable log/dlog singularities along the
// divisors contribute to the variance.  Those are tamed by an importance
// mixture: a fraction of the samples is drawn log-radially around each
// listed divisor line (the mixture density is exact, so the estimator stays
// unbiased).  The density callback receives the chart index and the chart
// point and returns the dx1^dy1^dx2^dy2 density.  Deterministic for fixed
// (seed, budget); strata are fixed by sample index, independent of worker
// count.
IntegralEstimate integrate_cp2_mc(
    const std::function<double(int chart, const std::array<Cpx, 2>&)>& density,
    const std::vector<std::array<Cpx, 3>>& divisor_covectors, std::uint64_t budget,
    std::uint64_t seed);

}  // namespace reglab
