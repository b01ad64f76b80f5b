#pragma once

// Test functions witnessing the moment bounds: the smooth time bump phi with
// its tabulated Fourier transforms, the even spatial bump psi, the product
// class E = {phi (x) psi} with its verified admissibility conditions, the
// integrable weight w, and the spherical cone C_d.
//
// Every oscillatory time integral against phi reduces to the transforms
// F_q(z) = \int phi(t) t^q e^{izt} dt, which are tabulated once per phi. Two
// derived quantities carry the cancellation-prone combinations:
//   M(z)     = \int phi(t) E(z,t) dt           = (F_0(z) - m_0)/(iz)
//   G(b,nu)  = (F_0(b+nu) - F_0(b))/(i nu)
//   V_k(nu)  = \int phi(t) \int_0^t (t-u)^k e^{i nu u} du dt
// each with a series branch near its singular argument.

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/phase.hpp"

namespace fracwave {

// --------------------------------------------------------------------------
// Time test function: scaled bump on (a, b) in (0, 1), normalized so that the
// integral equals `amplitude` (default 1). amplitude = 0 gives the zero
// function, admitted here for linearity tests; class-E membership requires a
// nonzero phi.
struct TimeTestFunction {
    double support_lo = 0.5;
    double support_hi = 1.0;
    double amplitude = 1.0;

    static TimeTestFunction bump_on(double a, double b, double amplitude = 1.0);
    static TimeTestFunction standard() { return bump_on(0.5, 1.0, 1.0); }
    static TimeTestFunction zero() { return bump_on(0.5, 1.0, 0.0); }

    double operator()(double t) const;
    bool is_zero() const { return amplitude == 0.0; }

private:
    double norm_ = 1.0; // integral of the raw bump on (a,b)
    friend class PhiTransform;
};

// Cached transforms of a fixed TimeTestFunction.
class PhiTransform {
public:
    explicit PhiTransform(const TimeTestFunction& phi);

    const TimeTestFunction& phi() const { return phi_; }
    double moment(int k) const;                 // m_k = \int phi t^k
    cplx F(int q, double z) const;              // q = 0..4
    cplx m_scalar(double z) const;              // M(z) = \int phi E(z, .)
    cplx m_derivative(double z) const;          // M'(z)
    cplx m_second_derivative(double z) const;   // M''(z)
    cplx phase_diff_quotient(double b, double nu) const; // G(b, nu)
    cplx v_kernel(int k, double nu) const;      // V_k(nu), k = 1 or 3

private:
    TimeTestFunction phi_;
    struct Tables;
    std::shared_ptr<const Tables> t_;
};

// --------------------------------------------------------------------------
// Spatial test function: even product bump of width sigma per axis,
// psi(x) = prod_i exp(-1/(1 - (x_i/sigma)^2)) on (-sigma, sigma)^d.
struct SpatialBump {
    int d = 1;
    double sigma = 0.5;
    double amplitude = 1.0;

    double operator()(Eigen::Ref<const Eigen::VectorXd> x) const;
    // F_x(psi)(eta); real and even.
    double ft(Eigen::Ref<const Eigen::VectorXd> eta) const;
    double ft_axis(double z) const; // single-axis factor sigma * B(sigma z)
};

// Class E of Definition-4.1-type product test functions. Construction checks
// the two admissibility conditions numerically and throws DomainError if
// either fails.
struct ClassETestFunction {
    TimeTestFunction phi;
    SpatialBump psi;
    double inf_ft_sq = 0.0; // inf_{|theta|<=1} |F_x psi(theta)|^2, cached

    ClassETestFunction(TimeTestFunction phi_, SpatialBump psi_);
    static ClassETestFunction standard(int d);
};

// --------------------------------------------------------------------------
// Weight w(x) = prod_i (1 + x_i^2)^{-1}; |w|_{L^1} = pi^d and
// F(w)(lambda) = prod_i pi e^{-|lambda_i|}.
struct WeightSpec {
    int d = 1;
    double operator()(Eigen::Ref<const Eigen::VectorXd> x) const {
        double v = 1.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) v /= (1.0 + x[i] * x[i]);
        return v;
    }
    double l1_norm() const { return std::pow(M_PI, d); }
    double ft(Eigen::Ref<const Eigen::VectorXd> lambda) const {
        double v = 1.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) v *= M_PI * std::exp(-std::abs(lambda[i]));
        return v;
    }
};

// Spherical cone with all angles in [pi/8, 3pi/8]; for d = 1 this is the
// positive half line.
bool cone_contains(int d, Eigen::Ref<const Eigen::VectorXd> x);

} // namespace fracwave
