#pragma once

// Spectral density of the fractional noise,
//   mu_H(d xi, d eta) = |xi|^{-(2H_0-1)} d xi  prod_i |eta_i|^{-(2H_i-1)} d eta_i,
// singular on the coordinate hyperplanes, and the closed-form power-law cell
// masses used by the grid discretization.

#include <Eigen/Core>
#include <cmath>

#include "fracwave/errors.hpp"
#include "fracwave/hurst.hpp"

namespace fracwave {

// Density of mu_H at (xi, eta). Every coordinate must be nonzero.
inline double mu_density(const HurstVector& H, double xi, Eigen::Ref<const Eigen::VectorXd> eta) {
    if (eta.size() != H.d) throw DomainError("mu_density: eta has wrong dimension");
    if (xi == 0.0) throw DomainError("mu_density: xi on the singular hyperplane xi = 0");
    double v = std::pow(std::abs(xi), 1.0 - 2.0 * H.h[0]);
    for (int i = 0; i < H.d; ++i) {
        if (eta[i] == 0.0) throw DomainError("mu_density: eta coordinate on a singular hyperplane");
        v *= std::pow(std::abs(eta[i]), 1.0 - 2.0 * H.h[i + 1]);
    }
    return v;
}

// \int_a^b x^{1-2H} dx for 0 <= a < b (one coordinate factor of mu_H).
inline double power_law_mass(double hurst, double a, double b) {
    const double p = 2.0 - 2.0 * hurst; // > 0 for H < 1
    return (std::pow(b, p) - std::pow(a, p)) / p;
}

} // namespace fracwave
