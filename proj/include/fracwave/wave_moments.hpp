#pragma once

// Deterministic and importance-sampled evaluation of the wave moment
// functionals: the Lemma-2.10 decay probe, the regime i-a moment I + 2 II,
// the Wick-renormalized i-b moment, the K_H coupling integral, the
// divergence functional I_n with its restricted J_M/J_R/J_MR split, and the
// empirical threshold scan.

#include <cstdint>
#include <string>
#include <vector>

#include "fracwave/hurst.hpp"
#include "fracwave/mollifier.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/regime.hpp"
#include "fracwave/test_functions.hpp"
#include "fracwave/time_kernels.hpp"

namespace fracwave {

struct McOptions {
    long samples = 200'000;
    uint64_t seed = 20240601;
    int threads = 2;
    KernelBudget budget{60, 16.0};
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

// L(|eta|) = \int dxi |xi|^{-(2H0-1)} |D^n(s; xi, eta)|^2 fitted against |eta|
// in log-log scale; slope is reported as the decay exponent (positive for
// decay). All-zero values (s = 0) give a degenerate fit with infinite
// residual.
GrowthFit recov_decay_probe(int n, double h0, double s, const std::vector<double>& eta_mags,
                            double kappa, double eps, double tol = 1e-7);

struct CherryIaResult {
    double i_term = 0.0;
    double ii_term = 0.0;
    double total = 0.0;     // I + 2 II
    double std_error = 0.0; // from the Monte Carlo II part
};

// Regime i-a moment E[ || c^n_t ||^2_{H^{1+gamma}_w} ] = I + 2 II; requires
// classify_regime == RegularNoRenorm and gamma in the admissible band.
CherryIaResult cherry_moment_ia(int d, const HurstVector& H, double t, double gamma, int n,
                                const WeightSpec& weight, const MollifierSpec& mol,
                                const McOptions& opts);

// Regime i-b Wick-renormalized moment 2 |w|_1 \int\int mu(n) mu(n)
// {1+|eta+etat|^2}^{1-2 alpha} |T^n|^2; requires WickRenormalizable and alpha
// in the admissible band.
McEstimate cherry_moment_ib(int d, const HurstVector& H, double t, double alpha, int n,
                            const WeightSpec& weight, const MollifierSpec& mol,
                            const McOptions& opts);

// \int\int_{[-R,R]^{2d}} {1+|eta-etat|^2}^{-2 alpha} K_H(eta) K_H(etat).
double kh_double_integral(int d, const HurstVector& H, double alpha, double kappa, double eps,
                          double R, double tol = 1e-6);

// I_n = \int mu(n) \int mu(n) |F_x psi(eta+etat)|^2 |U^n|^2, importance
// sampled; independent of any renormalization sequence.
McEstimate divergence_functional(int d, const HurstVector& H, const ClassETestFunction& Phi,
                                 const PhiTransform& phi, int n, const MollifierSpec& mol,
                                 const McOptions& opts);

struct DivergenceSplit {
    double j_m = 0.0;
    double j_r = 0.0;
    double j_mr = 0.0;
};

// Restricted-domain split of the lower bound J_n (cone C_d, octave windows,
// H' reparametrization); deterministic quadrature, d = 1 or 2.
DivergenceSplit divergence_split(int d, const HurstVector& H, const ClassETestFunction& Phi,
                                 const PhiTransform& phi, int n, const MollifierSpec& mol,
                                 double tol = 1e-3);

struct ScanPoint {
    HurstVector H;
    RegimeLabel label = RegimeLabel::IllPosed;
    bool empirical_divergent = false;
    bool agrees = false;
    GrowthFit fit;
    std::vector<std::pair<int, double>> values;
    std::string error; // nonempty when this point failed
};

// Sweep divergence_functional over n for each H on the grid and pair the
// empirical verdict with the classification arithmetic. Per-point failures
// are recorded, not propagated.
std::vector<ScanPoint> threshold_scan(int d, const std::vector<HurstVector>& grid,
                                      const ClassETestFunction& Phi, const PhiTransform& phi,
                                      std::pair<int, int> n_range, const MollifierSpec& mol,
                                      const McOptions& opts);

} // namespace fracwave
