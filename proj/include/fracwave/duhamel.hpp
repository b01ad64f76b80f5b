#pragma once

// Spatial Fourier transform of the (truncated) wave kernel and the Duhamel
// phase integral
//
//   D^n(s; xi, eta) = \int_0^s e^{-i xi r} sin(r|eta|)/|eta| dr ,  |eta| <= n,
//
// in closed form. With a = |eta| > 0,
//
//   D^n = (1/(2ia)) [ E(a - xi, s) - E(-(a + xi), s) ],
//
// stable at the resonances xi = +-a because E itself is stable. For a -> 0
// the sine kernel degenerates to r and we switch to the odd series
// D = om_1 - a^2/6 om_3 + a^4/120 om_5 evaluated at z = -xi.

#include <cmath>
#include <optional>

#include "fracwave/phase.hpp"

namespace fracwave {

// F_x(G_t)(eta) for |eta| = eta_mag: sin(t a)/a, with the sinc limit t at
// a = 0, and 0 outside the truncation ball |eta| <= cutoff (when given).
inline double wave_kernel_ft(double t, double eta_mag, std::optional<double> cutoff = {}) {
    const double a = std::abs(eta_mag);
    if (cutoff && a > *cutoff) return 0.0;
    const double at = a * std::abs(t);
    if (at < 1e-2) {
        const double x = at * at;
        return t * (1.0 - x / 6.0 * (1.0 - x / 20.0));
    }
    return std::sin(t * a) / a;
}

namespace detail {
inline constexpr double kDuhamelSmallA = 0.04; // switch to odd series when a*s below this
}

// D^n(s; xi, |eta|). Pass cutoff = {} for the untruncated kernel.
inline cplx duhamel(std::optional<double> cutoff, double s, double xi, double eta_mag) {
    const double a = std::abs(eta_mag);
    if (cutoff && a > *cutoff) return {0.0, 0.0};
    if (s == 0.0) return {0.0, 0.0};
    if (a * s < detail::kDuhamelSmallA) {
        const auto m = om_upto<5>(-xi, s);
        const double a2 = a * a;
        return m[1] - (a2 / 6.0) * m[3] + (a2 * a2 / 120.0) * m[5];
    }
    const cplx e1 = phase_integral(a - xi, s);
    const cplx e2 = phase_integral(-(a + xi), s);
    return (e1 - e2) / (2.0 * I_UNIT * a);
}

// Evaluator bound to a fixed regularization index n; the paper's G^n carries
// the spectral cutoff |eta| <= n.
struct DuhamelEvaluator {
    int n; // nonnegative regularization index

    explicit DuhamelEvaluator(int n_) : n(n_) {}

    cplx operator()(double s, double xi, double eta_mag) const {
        return duhamel(double(n), s, xi, eta_mag);
    }
    double kernel_ft(double t, double eta_mag) const {
        return wave_kernel_ft(t, eta_mag, double(n));
    }
};

} // namespace fracwave
