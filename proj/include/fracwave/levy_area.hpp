#pragma once

// Second moment of the mollified fractional Levy area paired with a time
// test function phi:
//
//   A_n = \int dxi |xi|^{-(2H-1)} |Frho(-2^{-n} xi)|^2
//         \int dxit |xit|^{-(2H+1)} |Frho(-2^{-n} xit)|^2 |M_phi(xi,xit) + R_phi(xi)|^2
//
// with M_phi(xi,xit) = \int phi(t) E(xi+xit, t) dt and R_phi(xi) = -M_phi(xi,0).
// The xit-axis exponent 2H+1 exceeds 1; integrability near xit = 0 rests on
// the quadratic vanishing of M_phi + R_phi = M(xi+xit) - M(xi), so the
// combined integrand is evaluated through a cancellation-free difference and
// never as density times a separate factor.

#include <utility>

#include "fracwave/errors.hpp"
#include "fracwave/mollifier.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/test_functions.hpp"

namespace fracwave {

enum class LevyRegime { Convergent, Divergent };

inline const char* to_string(LevyRegime r) {
    return r == LevyRegime::Convergent ? "Convergent" : "Divergent";
}

// Convergent iff H > 1/4 (strict), Divergent iff H <= 1/4.
inline LevyRegime classify_levy(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("classify_levy: H must lie in (0,1)");
    return hurst > 0.25 ? LevyRegime::Convergent : LevyRegime::Divergent;
}

struct LevyAreaConfig {
    double hurst = 0.125;
    TimeTestFunction phi = TimeTestFunction::standard();
    MollifierSpec mollifier = MollifierSpec::gaussian();
    std::pair<int, int> n_range{4, 12};
    double tol = 1e-5; // relative

    LevyAreaConfig() = default;
};

// M_phi(xi, xit) = \int_0^inf phi(t) E(xi+xit, t) dt.
cplx m_phi(const PhiTransform& phi, double xi, double xit);
// R_phi(xi) = -\int_0^inf phi(t) E(xi, t) dt.
cplx r_phi(const PhiTransform& phi, double xi);
// Cancellation-free M_phi(xi, xit) + R_phi(xi).
cplx m_plus_r(const PhiTransform& phi, double xi, double xit);

// A_n by nested adaptive quadrature with graded handling of both singular axes.
QuadratureResult levy_second_moment(const LevyAreaConfig& cfg, const PhiTransform& phi, int n);

// Restricted-domain decomposition over xi in (1,inf), xit in (xi, 2 xi):
// J_M uses |M_phi(xi,-xit)|^2, J_MR the cross terms plus |R_phi|^2.
std::pair<double, double> levy_m_split(const LevyAreaConfig& cfg, const PhiTransform& phi, int n);

} // namespace fracwave
