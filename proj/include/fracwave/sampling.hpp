#pragma once

// Importance sampling of the power-law spectral measure. Each coordinate of
// mu_H restricted to a symmetric box has density proportional to |x|^{1-2H},
// whose CDF on (0, T] is (x/T)^{2-2H}; inverse-transform sampling is exact.

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/hurst.hpp"
#include "fracwave/mollifier.hpp"
#include "fracwave/rng.hpp"

namespace fracwave {

// One axis of the product proposal: density |x|^{1-2H} / mass on [-T, T].
struct PowerLawAxis {
    double hurst;
    double trunc;

    PowerLawAxis(double h, double T) : hurst(h), trunc(T) {
        if (!(h > 0.0 && h < 1.0)) throw DomainError("PowerLawAxis: exponent 2-2H must be in (0,2)");
        if (!(T > 0.0)) throw DomainError("PowerLawAxis: truncation must be positive");
    }

    double exponent() const { return 2.0 - 2.0 * hurst; }
    double mass() const { return 2.0 * std::pow(trunc, exponent()) / exponent(); }
    // CDF of |x| on (0, T]
    double cdf_mag(double x) const { return std::pow(x / trunc, exponent()); }
    // u in (0,1) -> signed sample
    double sample(double u) const {
        const bool neg = u < 0.5;
        const double v = neg ? 1.0 - 2.0 * u : 2.0 * u - 1.0;
        const double mag = trunc * std::pow(v, 1.0 / exponent());
        return neg ? -mag : mag;
    }
    // proposal density at x (normalized)
    double density(double x) const {
        return std::pow(std::abs(x), 1.0 - 2.0 * hurst) / mass();
    }
};

struct WeightedPoint {
    double xi;
    Eigen::VectorXd eta;
    double weight;
};

// Draw `count` points from the normalized restriction of the bare power-law
// density to the box [-T, T]^{d+1}. Weights make sum_j w_j f(x_j) an unbiased
// estimator of \int f d mu_H^{(n)} over the box; with n < 0 the mollifier
// factor is dropped (bare mu_H), so weights are the constant box mass / count.
std::vector<WeightedPoint> importance_sample_mu(const HurstVector& H, int n, double truncation,
                                                long count, uint64_t seed,
                                                const MollifierSpec& mollifier = MollifierSpec::gaussian(),
                                                uint64_t stream = 0x6d755f73616d70ULL);

} // namespace fracwave
