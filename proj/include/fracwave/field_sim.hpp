#pragma once

// Spectral Monte Carlo synthesis of the mollified linear wave solution.
//
// The frequency box is partitioned into Hermitian cell pairs (c, -c) with
// exact power-law masses m_c = \int_cell mu_H x |F rho_n(midpoint)|^2. One
// complex standard Gaussian per pair with Z_{-c} = conj(Z_c) gives the real
// field
//
//   Psi^n(t,x) = sum_c sqrt(m_c) Z_c e^{i(xi_c t + <eta_c, x>)} D^n(t; xi_c, eta_c),
//
// whose discrete covariance is exactly the cell-sum quadrature of the
// continuum covariance formula. Wick subtraction, the pairing <c^n, Phi> and
// its second moment are therefore exact identities on this finite
// probability space, which is what the cross-validation tests exploit.

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/hurst.hpp"
#include "fracwave/mollifier.hpp"
#include "fracwave/rng.hpp"
#include "fracwave/test_functions.hpp"
#include "fracwave/time_kernels.hpp"

namespace fracwave {

class SpectralGrid {
public:
    // Geometric partition (finer near 0, ratio 2) of [-r_xi, r_xi] on the xi
    // axis and [-n, n] on each eta axis, `cells_per_half` cells per half axis.
    static SpectralGrid make(int d, const HurstVector& H, int n, const MollifierSpec& mol,
                             double r_xi, int cells_per_half);

    int d() const { return d_; }
    int n() const { return n_; }
    int cell_count() const { return int(mass_.size()); }
    double mass(int c) const { return mass_[c]; }
    double xi(int c) const { return mid_(0, c); }
    Eigen::VectorXd eta(int c) const { return mid_.col(c).tail(d_); }
    double eta_mag(int c) const { return mid_.col(c).tail(d_).norm(); }
    int reflection(int c) const { return refl_[c]; }
    const std::vector<int>& canonical_cells() const { return canonical_; }
    double total_mass() const { return mass_.sum(); }
    uint64_t spec_hash() const { return hash_; }

    // exact discrete covariance E[Psi(t,y) Psi(tt,yy)]
    double covariance(double t, Eigen::Ref<const Eigen::VectorXd> y, double tt,
                      Eigen::Ref<const Eigen::VectorXd> yy) const;
    // c_n(t) = E[Psi(t,x)^2]; independent of x
    double wick_counterterm(double t) const;

private:
    int d_ = 1, n_ = 0;
    Eigen::MatrixXd mid_;   // (d+1) x N midpoints
    Eigen::VectorXd mass_;  // N
    std::vector<int> refl_;
    std::vector<int> canonical_;
    uint64_t hash_ = 0;
};

struct NoiseDraw {
    const SpectralGrid* grid = nullptr;
    Eigen::VectorXcd z; // one coefficient per cell, Hermitian: z[-c] = conj(z[c])
    uint64_t seed = 0;
    uint64_t replica = 0;
};

// Coefficients are a pure function of (seed, replica); distinct replicas use
// distinct streams.
NoiseDraw draw_noise(const SpectralGrid& grid, uint64_t seed, uint64_t replica);

// Psi^n(t, x); the Hermitian symmetry makes it real (imaginary residue is
// asserted below 1e-10 relative and discarded).
double synthesize_psi(const NoiseDraw& draw, double t, Eigen::Ref<const Eigen::VectorXd> x);

// Psi^n(t,x)^2 - c_n(t,x) with the exact grid counterterm.
double wick_square(const NoiseDraw& draw, double t, Eigen::Ref<const Eigen::VectorXd> x);

enum class CnMode { StandardWick, None, Custom };

// Pairing <G^n * [1_{R_+} (Psi^2 - c_n)], Phi> evaluated spectrally: one time
// integral per cell pair, precomputed into the symmetric matrix
// A_{cc'} = sqrt(m_c m_c') F_x(psi)(eta_c + eta_c') W_{cc'}.
class PairingOperator {
public:
    PairingOperator(const SpectralGrid& grid, const ClassETestFunction& Phi,
                    const PhiTransform& phi, const KernelBudget& budget = {160, 16.0});

    double pair(const NoiseDraw& draw, CnMode mode,
                const std::function<double(double)>& custom_cn = {}) const;

    // E[ pair(StandardWick)^2 ] on this grid, exactly: 2 sum_{cc'} |A_{cc'}|^2.
    double second_moment_exact() const;
    // <G^n * [1 c_n^grid], Phi>, the deterministic offset of the standard mode.
    double standard_offset() const { return std_offset_; }
    const Eigen::MatrixXcd& matrix() const { return a_; }
    const SpectralGrid& grid() const { return *grid_; }

private:
    const SpectralGrid* grid_;
    const PhiTransform* phi_;
    TimeTestFunction time_fn_;
    double psi_at_zero_ = 0.0;
    Eigen::MatrixXcd a_;
    double std_offset_ = 0.0;
};

struct EmpiricalMoment {
    double mean = 0.0;
    double std_error = 0.0;
    long replicas = 0;
    uint64_t seed = 0;
};

// Mean of pair(...)^2 over independent replicas.
EmpiricalMoment estimate_pairing_moment(const PairingOperator& op, long replicas, uint64_t seed,
                                        CnMode mode = CnMode::StandardWick,
                                        const std::function<double(double)>& custom_cn = {});

} // namespace fracwave
