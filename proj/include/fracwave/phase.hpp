#pragma once

// Stable closed forms for the oscillatory moment integrals
//
//     om_k(z, s) = \int_0^s r^k e^{i z r} dr ,   k = 0..8,
//
// which are the primitives behind every time integral in this project.
// om_0 is the phase integral E(z,s) = (e^{izs} - 1)/(iz); higher k follow
// the recursion om_k = (s^k e^{izs} - k om_{k-1})/(iz). Near z = 0 the
// closed forms cancel catastrophically, so each switches to the power
// series sum_j (iz)^j s^{k+j+1} / (j! (k+j+1)).

#include <array>
#include <cmath>
#include <complex>

namespace fracwave {

using cplx = std::complex<double>;

inline constexpr cplx I_UNIT{0.0, 1.0};

namespace detail {

// |z s| below this uses the series branch; above it the recursion is safe
// (relative cancellation stays within a digit or two).
inline constexpr double kOmSeriesRadius = 2.0;

inline cplx om_series(int k, double z, double s) {
    // sum_j (iz)^j s^{k+j+1} / (j! (k+j+1))
    const cplx izs = I_UNIT * (z * s);
    cplx term = 1.0;          // (izs)^j / j!
    cplx acc = 1.0 / double(k + 1);
    for (int j = 1; j <= 40; ++j) {
        term *= izs / double(j);
        const cplx contrib = term / double(k + j + 1);
        acc += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(acc)) break;
    }
    return acc * std::pow(s, k + 1);
}

} // namespace detail

// om_k(z, s) for s >= 0. Exact (to roundoff) for all z including z = 0.
inline cplx om(int k, double z, double s) {
    if (s == 0.0) return {0.0, 0.0};
    if (std::abs(z) * s < detail::kOmSeriesRadius) return detail::om_series(k, z, s);
    const cplx eizs = std::exp(I_UNIT * (z * s));
    const cplx iz = I_UNIT * z;
    cplx v = (eizs - 1.0) / iz; // om_0
    double sk = 1.0;
    for (int j = 1; j <= k; ++j) {
        sk *= s;
        v = (sk * eizs - double(j) * v) / iz;
    }
    return v;
}

// Phase integral E(z, s) = \int_0^s e^{izr} dr.
inline cplx phase_integral(double z, double s) { return om(0, z, s); }

// \int_0^s r e^{izr} dr.
inline cplx ramp_integral(double z, double s) { return om(1, z, s); }

// Complement moment integral omc_q(k, nu, t) = \int_0^t (t-u)^k e^{i nu u} du.
// Series for small |nu t|, otherwise the by-parts recursion
// Q_0 = E(nu, t), Q_k = (k Q_{k-1} - t^k)/(i nu).
inline cplx omc_q(int k, double nu, double t) {
    if (t <= 0.0) return {0.0, 0.0};
    if (std::abs(nu) * t < detail::kOmSeriesRadius) {
        cplx c = std::pow(t, k + 1) / double(k + 1);
        cplx acc = c;
        for (int j = 1; j <= 40; ++j) {
            c *= I_UNIT * (nu * t) / double(k + j + 1);
            acc += c;
            if (std::abs(c) < 1e-18 * std::abs(acc)) break;
        }
        return acc;
    }
    cplx q = om(0, nu, t);
    const cplx inu = I_UNIT * nu;
    double tk = 1.0;
    for (int j = 1; j <= k; ++j) {
        tk *= t;
        q = (double(j) * q - tk) / inu;
    }
    return q;
}

// Batched om_0..om_k at fixed (z, s); cheaper than k separate calls when the
// recursion branch applies.
template <int K>
inline std::array<cplx, K + 1> om_upto(double z, double s) {
    std::array<cplx, K + 1> out{};
    if (s == 0.0) return out;
    if (std::abs(z) * s < detail::kOmSeriesRadius) {
        for (int k = 0; k <= K; ++k) out[k] = detail::om_series(k, z, s);
        return out;
    }
    const cplx eizs = std::exp(I_UNIT * (z * s));
    const cplx iz = I_UNIT * z;
    out[0] = (eizs - 1.0) / iz;
    double sk = 1.0;
    for (int k = 1; k <= K; ++k) {
        sk *= s;
        out[k] = (sk * eizs - double(k) * out[k - 1]) / iz;
    }
    return out;
}

} // namespace fracwave
