#pragma once

// Hurst index vector H = (H_0, ..., H_d) of a space-time fractional noise:
// H_0 in (0,1) is the time index, H_1..H_d in (0, 3/4) the spatial ones.

#include <Eigen/Core>
#include <string>

#include "fracwave/errors.hpp"

namespace fracwave {

struct HurstVector {
    int d = 0;          // spatial dimension
    Eigen::VectorXd h;  // size d+1, h[0] = H_0, h[i] = H_i

    HurstVector() = default;
    HurstVector(int d_, Eigen::VectorXd h_) : d(d_), h(std::move(h_)) { validate(); }

    static HurstVector of(std::initializer_list<double> vals) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
        Eigen::Index i = 0;
        for (double x : vals) v[i++] = x;
        return HurstVector(int(vals.size()) - 1, std::move(v));
    }
    static HurstVector white_noise(int d) {
        return HurstVector(d, Eigen::VectorXd::Constant(d + 1, 0.5));
    }

    double h0() const { return h[0]; }
    double h_plus() const { return h.tail(d).sum(); }
    double h_sum() const { return h.sum(); }

    void validate() const {
        if (d < 1) throw DomainError("HurstVector: spatial dimension must be >= 1");
        if (h.size() != d + 1) throw DomainError("HurstVector: need d+1 components");
        if (!(h[0] > 0.0 && h[0] < 1.0))
            throw DomainError("HurstVector: H_0 = " + std::to_string(h[0]) + " outside (0,1)");
        for (int i = 1; i <= d; ++i)
            if (!(h[i] > 0.0 && h[i] < 0.75))
                throw DomainError("HurstVector: H_" + std::to_string(i) + " = " +
                                  std::to_string(h[i]) + " outside (0,3/4)");
    }
};

} // namespace fracwave
