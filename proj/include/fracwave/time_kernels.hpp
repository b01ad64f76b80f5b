#pragma once

// Time kernels of the second-order (cherry) moments:
//
//   T(t) = \int_0^t du e^{iu Theta} F_x(G^n_{t-u})(b) D^n(u; xi, a) D^n(u; xit, at)
//   U    = \int phi(t) T(t) dt
//
// and the M/R decomposition of the restricted divergence functional, where
// each D factor is replaced by one of its two pure-phase halves.
//
// Away from the resonance set (all of |a -+ xi|, |at -+ xit| large on the
// time scale) the D factors expand into three pure exponentials each, the u
// integral closes into phase integrals, and the phi average reduces to
// lookups of the tabulated transforms F_q — a few hundred nanoseconds per
// point. Near a resonance the expansion coefficients blow up (the integrand
// does not) and the kernel falls back to frequency-resolved Gauss panels on
// (t, u). The `node_cap` bounds the fallback cost for far-tail Monte Carlo
// points whose contribution is negligible.

#include <complex>

#include "fracwave/duhamel.hpp"
#include "fracwave/test_functions.hpp"

namespace fracwave {

struct CherryPoint {
    double theta; // xi + xit  (J-form uses xi - xit)
    double xi, a; // first Duhamel factor: frequency and |eta|
    double xit, at;
    double b;     // |eta + etat|  (J-form: |eta - etat|)
};

struct KernelBudget {
    int node_cap = 160;     // max Gauss nodes per (t or u) axis in the fallback
    double tier_a_min = 16; // resonance distance (in units of 1/t_max) for the closed path
};

// T(t) with spectral cutoff n on a, at and b (n < 0 disables the cutoff).
cplx cherry_kernel_at(double n, double t, const CherryPoint& p, const KernelBudget& budget = {});

// U = \int phi(t) T(t) dt over supp phi.
cplx cherry_kernel_phi(const PhiTransform& phi, double n, const CherryPoint& p,
                       const KernelBudget& budget = {});

// M/R split of the J-form kernel (second Duhamel factor conjugated):
//   full = \int phi(t) \int_0^t du e^{iu(xi - xit)} F_x(G^n_{t-u})(|eta-etat|)
//          D^n(u; xi, a) conj(D^n(u; xit, at)) dt = m + r  (for a, at <= n)
// with m built from the resonant halves e^{-is(xi-a)}, e^{ir(xit-at)}.
struct MRParts {
    cplx m{0.0, 0.0};
    cplx r{0.0, 0.0};
};
MRParts jsplit_kernel_phi(const PhiTransform& phi, double n, const CherryPoint& p,
                          int nodes_t = 32, int nodes_u = 32);

} // namespace fracwave
