#pragma once

// Uniform tables of F(z) = \int f(t) t^q e^{izt} dt for a fixed smooth
// compactly supported f, with 6-point Lagrange interpolation in z. The
// transforms of bump functions decay faster than any power, so the table is
// cut once |F| falls below ~1e-18 and treated as zero beyond.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fracwave/detail/gauss.hpp"

namespace fracwave::detail {

class OscTable {
public:
    // f smooth on [lo, hi] (vanishing to all orders at the endpoints).
    OscTable() = default;
    OscTable(std::function<double(double)> f, double lo, double hi, int q, double z_max,
             double step)
        : lo_(lo), hi_(hi), step_(step) {
        const int n_nodes = int(z_max / step) + 6;
        vals_.resize(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            const double z = i * step;
            const int panels = panels_for_frequency(z, hi - lo, 4);
            vals_[i] = gauss10_composite(
                [&](double t) {
                    double tq = 1.0;
                    for (int j = 0; j < q; ++j) tq *= t;
                    return f(t) * tq * std::exp(std::complex<double>(0.0, z * t));
                },
                lo, hi, panels);
        }
    }

    // F(z) for any real z; conjugate symmetry F(-z) = conj(F(z)) since f real.
    std::complex<double> operator()(double z) const {
        const double az = std::abs(z);
        const double x = az / step_;
        const int n = int(vals_.size());
        if (x >= n - 4) return {0.0, 0.0};
        int i0 = int(x) - 2;
        if (i0 < 0) i0 = 0;
        if (i0 > n - 6) i0 = n - 6;
        // 6-point Lagrange on nodes i0..i0+5
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < 6; ++j) {
            double lagr = 1.0;
            for (int m = 0; m < 6; ++m)
                if (m != j) lagr *= (x - (i0 + m)) / double(j - m);
            acc += lagr * vals_[i0 + j];
        }
        return z >= 0.0 ? acc : std::conj(acc);
    }

    double z_max() const { return (vals_.size() - 6) * step_; }
    bool empty() const { return vals_.empty(); }

private:
    double lo_ = 0.0, hi_ = 0.0, step_ = 1.0;
    std::vector<std::complex<double>> vals_;
};

} // namespace fracwave::detail
