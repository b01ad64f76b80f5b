#include "fracwave/mollifier.hpp"

#include <cmath>
#include <mutex>

#include "fracwave/detail/gauss.hpp"
#include "fracwave/detail/osc_table.hpp"
#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

// 1-d normalized bump on (-1,1): c * exp(-1/(1-y^2)).
double unit_bump_raw(double y) {
    const double r = 1.0 - y * y;
    return r > 0.0 ? std::exp(-1.0 / r) : 0.0;
}

struct BumpTransform {
    double norm;              // \int_{-1}^{1} exp(-1/(1-y^2)) dy
    detail::OscTable table;   // transform of the normalized bump (real even)

    BumpTransform() {
        norm = detail::gauss10_composite(unit_bump_raw, -1.0, 1.0, 24);
        // Transform decays like exp(-c sqrt(z)); ~1e-18 well before z = 4096.
        table = detail::OscTable([this](double y) { return unit_bump_raw(y) / norm; },
                                 -1.0, 1.0, 0, 4096.0, 1.0 / 16.0);
    }
};

const BumpTransform& bump_transform() {
    static BumpTransform t;
    return t;
}

} // namespace

double mollifier_ft_base_1d(const MollifierSpec& spec, double z) {
    if (spec.scale <= 0.0) throw DomainError("MollifierSpec: scale must be positive");
    const double zs = z * spec.scale;
    switch (spec.kind) {
        case MollifierKind::GaussianProduct:
            return std::exp(-0.5 * zs * zs);
        case MollifierKind::CompactBump:
            // bump of width `scale`: FT is the unit-bump transform at z*scale
            return bump_transform().table(zs).real();
    }
    return 0.0;
}

double mollifier_ft_base(const MollifierSpec& spec, double xi, Eigen::Ref<const Eigen::VectorXd> eta) {
    double v = mollifier_ft_base_1d(spec, xi);
    for (Eigen::Index i = 0; i < eta.size(); ++i) v *= mollifier_ft_base_1d(spec, eta[i]);
    return v;
}

double mollifier_ft(const MollifierSpec& spec, int n, double xi, Eigen::Ref<const Eigen::VectorXd> eta) {
    if (n < 0) return 1.0;
    const double s = std::ldexp(1.0, -n); // 2^{-n}
    return mollifier_ft_base(spec, s * xi, s * eta);
}

double mollifier_sq_1d(const MollifierSpec& spec, int n, double axis_value) {
    if (n < 0) return 1.0;
    const double v = mollifier_ft_base_1d(spec, std::ldexp(axis_value, -n));
    return v * v;
}

namespace detail {
double unit_bump_value(double y) { return unit_bump_raw(y); }
double unit_bump_norm() { return bump_transform().norm; }
double unit_bump_ft_raw(double z) {
    return bump_transform().norm * bump_transform().table(z).real();
}
} // namespace detail

} // namespace fracwave

