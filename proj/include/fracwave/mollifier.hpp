#pragma once

// Mollifier rho on R^{d+1} (smooth, nonnegative, integral one) through its
// Fourier transform. The scaled family is rho_n(t,x) = 2^{n(d+1)} rho(2^n t, 2^n x),
// so F(rho_n)(xi, eta) = F(rho)(2^{-n} xi, 2^{-n} eta).
//
// GaussianProduct: rho = (2 pi sigma^2)^{-(d+1)/2} exp(-(t^2+|x|^2)/(2 sigma^2)),
//   F(rho)(xi,eta) = exp(-sigma^2 (xi^2+|eta|^2)/2). Positive, Lipschitz, <= 1.
// CompactBump: product of 1-d bumps c exp(-1/(1-(x/sigma)^2)) on (-sigma, sigma),
//   normalized to integral one per axis; the 1-d transform is tabulated.

#include <Eigen/Core>

namespace fracwave {

enum class MollifierKind { GaussianProduct, CompactBump };

struct MollifierSpec {
    MollifierKind kind = MollifierKind::GaussianProduct;
    double scale = 1.0; // base width; must be > 0

    static MollifierSpec gaussian(double scale = 1.0) { return {MollifierKind::GaussianProduct, scale}; }
    static MollifierSpec bump(double scale = 1.0) { return {MollifierKind::CompactBump, scale}; }
};

// F(rho)(xi, eta) at the unscaled level. Real (both kinds are even), equals 1
// at the origin, magnitude <= 1 everywhere.
double mollifier_ft_base(const MollifierSpec& spec, double xi, Eigen::Ref<const Eigen::VectorXd> eta);
double mollifier_ft_base_1d(const MollifierSpec& spec, double z); // single-axis factor

// F(rho_n)(xi, eta) = F(rho)(2^{-n} xi, 2^{-n} eta). n < 0 means no mollifier
// (factor identically 1).
double mollifier_ft(const MollifierSpec& spec, int n, double xi, Eigen::Ref<const Eigen::VectorXd> eta);

// |F(rho_n)|^2 as a product over axes; axis values are (xi, eta_1, ..., eta_d).
double mollifier_sq_1d(const MollifierSpec& spec, int n, double axis_value);

namespace detail {
// Raw 1-d bump exp(-1/(1-y^2)) on (-1,1): pointwise value, its integral, and
// the transform of the raw (unnormalized) bump. Shared with SpatialBump.
double unit_bump_value(double y);
double unit_bump_norm();
double unit_bump_ft_raw(double z);
} // namespace detail

} // namespace fracwave
