#pragma once

// Regime classification on the frontier H_0 + H_+ = 3d/4 - 1/2 and the
// admissible Sobolev exponent bands of the two convergent regimes.

#include <string>
#include <utility>

#include "fracwave/errors.hpp"
#include "fracwave/hurst.hpp"

namespace fracwave {

enum class RegimeLabel { RegularNoRenorm, WickRenormalizable, IllPosed };

inline const char* to_string(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::RegularNoRenorm: return "RegularNoRenorm";
        case RegimeLabel::WickRenormalizable: return "WickRenormalizable";
        case RegimeLabel::IllPosed: return "IllPosed";
    }
    return "?";
}

// RegularNoRenorm    iff H_0+H_+ >  d - 1/2
// WickRenormalizable iff 3d/4 - 1/2 < H_0+H_+ <= d - 1/2
// IllPosed           iff H_0+H_+ <= 3d/4 - 1/2
inline RegimeLabel classify_regime(int d, const HurstVector& H) {
    if (H.d != d) throw DomainError("classify_regime: dimension mismatch");
    H.validate();
    const double s = H.h_sum();
    if (s > d - 0.5) return RegimeLabel::RegularNoRenorm;
    if (s > 0.75 * d - 0.5) return RegimeLabel::WickRenormalizable;
    return RegimeLabel::IllPosed;
}

struct RealInterval {
    double lo, hi; // open interval
    bool contains(double x) const { return x > lo && x < hi; }
};

// Admissible gamma (regime i-a) or alpha (regime i-b) band. Throws
// DomainError when the regime is IllPosed or does not match.
inline RealInterval valid_exponent_range(int d, const HurstVector& H, RegimeLabel regime) {
    const RegimeLabel actual = classify_regime(d, H);
    if (regime != actual)
        throw DomainError(std::string("valid_exponent_range: regime mismatch, H classifies as ") +
                          to_string(actual));
    const double s = H.h_sum();
    switch (regime) {
        case RegimeLabel::RegularNoRenorm:
            return {0.0, s - (d - 0.5)};
        case RegimeLabel::WickRenormalizable:
            return {std::max(d - 0.5 - s, 0.25 * (d - 1)), 0.25 * d};
        case RegimeLabel::IllPosed:
            throw DomainError("valid_exponent_range: no admissible exponent in the ill-posed regime");
    }
    throw DomainError("valid_exponent_range: unreachable");
}

struct HPrime {
    Eigen::VectorXd h_prime; // size d+1
};

// Lift H componentwise onto the frontier H'_0 + H'_+ = 3d/4 - 1/2, splitting
// the deficit proportionally to each coordinate's headroom (cap 1 for the
// time index, 3/4 for spatial ones).
inline HPrime reparametrize_h_prime(int d, const HurstVector& H) {
    if (H.d != d) throw DomainError("reparametrize_h_prime: dimension mismatch");
    H.validate();
    const double target = 0.75 * d - 0.5;
    const double deficit = target - H.h_sum();
    if (deficit < 0.0)
        throw DomainError("reparametrize_h_prime: requires H_0+H_+ <= 3d/4 - 1/2");
    Eigen::VectorXd head(d + 1);
    head[0] = 1.0 - H.h[0];
    for (int i = 1; i <= d; ++i) head[i] = 0.75 - H.h[i];
    const double total = head.sum();
    HPrime out;
    out.h_prime = H.h + (deficit / total) * head;
    return out;
}

} // namespace fracwave
