#pragma once

// Test-local brute-force integration oracles, independent of the library's
// quadrature machinery: composite Simpson with interval doubling until two
// successive refinements agree.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace oracle {

template <typename F>
auto simpson(F&& f, double a, double b, int n) -> decltype(f(0.0) * 1.0) {
    using R = decltype(f(0.0) * 1.0);
    const double h = (b - a) / n;
    R acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// Richardson-checked Simpson; doubles panels until |change| <= tol.
template <typename F>
auto integrate(F&& f, double a, double b, double tol, int n0 = 64, int max_n = 1 << 22)
    -> decltype(f(0.0) * 1.0) {
    auto prev = simpson(f, a, b, n0);
    for (int n = 2 * n0; n <= max_n; n *= 2) {
        auto cur = simpson(f, a, b, n);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("oracle::integrate did not settle");
}

// trapezoid rule at fixed resolution (used where the spec calls for an
// independent high-resolution trapezoid oracle)
template <typename F>
double trapezoid(F&& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

} // namespace oracle
