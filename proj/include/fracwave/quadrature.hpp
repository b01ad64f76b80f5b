#pragma once

// Deterministic adaptive integration over singular power-law integrands.
//
// The workhorse is a 15-point Gauss-Kronrod bisection scheme. Endpoints with
// a declared |x - e|^{-beta} singularity (beta < 1) are regularized by the
// graded substitution x = e + w u^gamma, gamma >= 2/(1-beta), which restores
// full convergence order; interior breakpoints let callers pre-split known
// resonance locations.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

struct Interval {
    double a = 0.0, b = 0.0;
    // Exponent beta of an |x-endpoint|^{-beta} singularity (0 = regular). Must be < 1.
    double singular_beta_a = 0.0;
    double singular_beta_b = 0.0;
    std::vector<double> breakpoints; // interior split hints
};

struct QuadratureOptions {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9; // stop when err <= max(abs_tol, rel_tol*|value|)
    long max_evaluations = 20'000'000;
};

// Adaptive integral of f over one interval. Throws NonConvergence (with the
// best estimate attached) when the evaluation budget runs out, DomainError on
// an empty/invalid interval or beta >= 1.
QuadratureResult integrate_1d(const std::function<double(double)>& f, const Interval& iv,
                              const QuadratureOptions& opts = {});

// Integral over [a, infinity): tail boxes [R, 2R) are added until the last
// increment falls below 0.1 * tol. `iv.b` is the initial truncation radius.
QuadratureResult integrate_tail_doubling(const std::function<double(double)>& f, const Interval& iv,
                                         const QuadratureOptions& opts = {}, int max_doublings = 48);

// Nested 2-d integration: outer over `outer`, inner interval depends on the
// outer variable. Inner tolerance is derived from the outer one.
QuadratureResult integrate_2d_nested(const std::function<double(double, double)>& f,
                                     const Interval& outer,
                                     const std::function<Interval(double)>& inner_of,
                                     const QuadratureOptions& opts = {});

// ---------------------------------------------------------------------------
// Generic domain surface (boxes + singular axes) for callers that do not want
// to hand-roll the nesting.

struct Box {
    std::vector<double> lo, hi;
};

struct IntegrationDomain {
    int dim = 1;
    std::vector<Box> boxes;
    std::vector<int> singular_axes; // axes with a |x|^{-beta} singularity at 0
    std::vector<double> singular_betas; // parallel to singular_axes
    bool graded = true;
};

QuadratureResult adaptive_integrate(const std::function<double(const std::vector<double>&)>& f,
                                    const IntegrationDomain& domain,
                                    const QuadratureOptions& opts = {});

// ---------------------------------------------------------------------------
// Growth-exponent fitting for divergence detection.

struct GrowthFit {
    double slope = 0.0;     // per unit n, log2 scale
    double intercept = 0.0;
    double residual = 0.0;  // RMS of fit deviations
    std::pair<int, int> n_range{0, 0};
};

// Least squares on (n, log2 value). Requires >= 3 points with positive values.
GrowthFit growth_fit(const std::vector<std::pair<int, double>>& values);

// Operational divergence verdict for a sweep of positive values indexed by n:
// divergent when the fitted log2 slope exceeds 0.05 with residual below 0.1,
// or, in the marginal (logarithmic) case, when the successive differences
// over the last four n stay bounded below by a positive constant.
struct DivergenceVerdict {
    bool divergent = false;
    bool marginal = false; // triggered by the successive-difference rule
    GrowthFit fit;
};

DivergenceVerdict assess_divergence(const std::vector<std::pair<int, double>>& values);

} // namespace fracwave
