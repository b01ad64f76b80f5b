#include "fracwave/time_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "fracwave/detail/gauss.hpp"

namespace fracwave {

namespace {

constexpr double kSmallB = 0.05;  // below this, F_x(G)(b) is expanded around b = 0
constexpr double kSmallA = 0.05;  // tier A needs both |eta| magnitudes above this

// Pure-exponential expansion D(u) = sum_j c[j] e^{i alpha[j] u}.
struct DExpansion {
    cplx c[3];
    double alpha[3];
};

DExpansion expand_duhamel(double xi, double a) {
    const double z1 = a - xi, z2 = a + xi;
    DExpansion e;
    e.c[0] = cplx(-1.0 / (2.0 * a * z1), 0.0);
    e.alpha[0] = z1;
    e.c[1] = cplx(-1.0 / (2.0 * a * z2), 0.0);
    e.alpha[1] = -z2;
    e.c[2] = -(e.c[0] + e.c[1]);
    e.alpha[2] = 0.0;
    return e;
}

bool cut(double n, double mag) { return n >= 0.0 && mag > n; }

double resonance_gap(const CherryPoint& p) {
    const double z1 = std::abs(p.a - p.xi), z2 = std::abs(p.a + p.xi);
    const double z3 = std::abs(p.at - p.xit), z4 = std::abs(p.at + p.xit);
    return std::min(std::min(z1, z2), std::min(z3, z4));
}

bool tier_a_ok(const CherryPoint& p, const KernelBudget& budget) {
    return p.a > kSmallA && p.at > kSmallA && resonance_gap(p) >= budget.tier_a_min;
}

int fallback_panels(double freq, double range, int node_cap) {
    const int p = detail::panels_for_frequency(freq, range, 2);
    return std::clamp(p, 2, std::max(2, node_cap / 10));
}

} // namespace

cplx cherry_kernel_at(double n, double t, const CherryPoint& p, const KernelBudget& budget) {
    if (t <= 0.0) return {0.0, 0.0};
    if (cut(n, p.a) || cut(n, p.at) || cut(n, p.b)) return {0.0, 0.0};

    if (tier_a_ok(p, budget)) {
        const DExpansion d1 = expand_duhamel(p.xi, p.a);
        const DExpansion d2 = expand_duhamel(p.xit, p.at);
        cplx acc{0.0, 0.0};
        if (p.b >= kSmallB) {
            const cplx pref = 1.0 / (2.0 * I_UNIT * p.b);
            const cplx ebp = std::exp(I_UNIT * (p.b * t));
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double nu = p.theta + d1.alpha[j] + d2.alpha[k];
                    acc += d1.c[j] * d2.c[k] * pref *
                           (ebp * phase_integral(nu - p.b, t) -
                            std::conj(ebp) * phase_integral(nu + p.b, t));
                }
        } else {
            // F_x(G)(b) = (t-u)(1 - b^2 (t-u)^2 / 6 + O(b^4))
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double nu = p.theta + d1.alpha[j] + d2.alpha[k];
                    const cplx q1 = omc_q(1, nu, t);
                    const cplx q3 = omc_q(3, nu, t);
                    acc += d1.c[j] * d2.c[k] * (q1 - (p.b * p.b / 6.0) * q3);
                }
        }
        return acc;
    }

    // fallback: frequency-resolved Gauss on u
    const double freq = std::abs(p.theta) + p.b + p.a + std::abs(p.xi) + p.at + std::abs(p.xit);
    const int panels = fallback_panels(freq, t, budget.node_cap);
    const std::optional<double> cutoff = n >= 0.0 ? std::optional<double>(n) : std::nullopt;
    return detail::gauss10_composite(
        [&](double u) {
            return std::exp(I_UNIT * (p.theta * u)) * wave_kernel_ft(t - u, p.b, cutoff) *
                   duhamel(cutoff, u, p.xi, p.a) * duhamel(cutoff, u, p.xit, p.at);
        },
        0.0, t, panels);
}

cplx cherry_kernel_phi(const PhiTransform& phi, double n, const CherryPoint& p,
                       const KernelBudget& budget) {
    if (cut(n, p.a) || cut(n, p.at) || cut(n, p.b)) return {0.0, 0.0};
    const TimeTestFunction& f = phi.phi();
    if (f.is_zero()) return {0.0, 0.0};

    if (tier_a_ok(p, budget)) {
        const DExpansion d1 = expand_duhamel(p.xi, p.a);
        const DExpansion d2 = expand_duhamel(p.xit, p.at);
        cplx acc{0.0, 0.0};
        if (p.b >= kSmallB) {
            const cplx pref = 1.0 / (2.0 * I_UNIT * p.b);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double nu = p.theta + d1.alpha[j] + d2.alpha[k];
                    acc += d1.c[j] * d2.c[k] * pref *
                           (phi.phase_diff_quotient(p.b, nu - p.b) -
                            phi.phase_diff_quotient(-p.b, nu + p.b));
                }
        } else {
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const double nu = p.theta + d1.alpha[j] + d2.alpha[k];
                    acc += d1.c[j] * d2.c[k] *
                           (phi.v_kernel(1, nu) - (p.b * p.b / 6.0) * phi.v_kernel(3, nu));
                }
        }
        return acc;
    }

    // fallback: Gauss in t over supp phi, inner kernel at fixed t
    const double freq =
        std::abs(p.theta) + 2.0 * p.b + p.a + std::abs(p.xi) + p.at + std::abs(p.xit);
    const int panels = fallback_panels(freq, f.support_hi - f.support_lo, budget.node_cap);
    return detail::gauss10_composite(
        [&](double t) { return f(t) * cherry_kernel_at(n, t, p, budget); }, f.support_lo,
        f.support_hi, panels);
}

MRParts jsplit_kernel_phi(const PhiTransform& phi, double n, const CherryPoint& p, int nodes_t,
                          int nodes_u) {
    MRParts out;
    if (cut(n, p.a) || cut(n, p.at)) return out;
    const TimeTestFunction& f = phi.phi();
    if (f.is_zero()) return out;
    const std::optional<double> cutoff = n >= 0.0 ? std::optional<double>(n) : std::nullopt;

    const double zx = p.xi - p.a;   // resonant half of the first factor
    const double zy = p.xi + p.a;
    const double zw = p.xit + p.at;
    const double zv = p.xit - p.at; // resonant half of the second factor
    const cplx pref = -1.0 / (4.0 * p.a * p.at);

    const double freq_u = std::abs(p.theta) + p.b + std::abs(zx) + std::abs(zy) + std::abs(zw) +
                          std::abs(zv);
    const int pu = std::max(2, std::min(nodes_u, detail::panels_for_frequency(freq_u, 1.0, 2) * 2));
    const int pt = std::max(2, std::min(nodes_t, detail::panels_for_frequency(
                                                     freq_u, f.support_hi - f.support_lo, 2) *
                                                     2));

    auto inner = [&](double t) {
        cplx m{0.0, 0.0}, r{0.0, 0.0};
        const double w = t / pu, h = 0.5 * w;
        for (int pnl = 0; pnl < pu; ++pnl) {
            const double c = (pnl + 0.5) * w;
            for (int j = 0; j < 10; ++j) {
                const double u = c + h * detail::kGL10Nodes[j];
                const cplx common = detail::kGL10Weights[j] *
                                    std::exp(I_UNIT * (p.theta * u)) *
                                    wave_kernel_ft(t - u, p.b, cutoff);
                const cplx x = phase_integral(-zx, u);
                const cplx y = phase_integral(-zy, u);
                const cplx wv = phase_integral(zw, u);
                const cplx vv = phase_integral(zv, u);
                m += common * (-x * vv); // pref * (-xv) = +xv/(4 a at)
                r += common * (x * wv - y * wv + y * vv);
            }
        }
        m *= pref * h;
        r *= pref * h;
        return MRParts{m, r};
    };

    const double w = (f.support_hi - f.support_lo) / pt, h = 0.5 * w;
    for (int pnl = 0; pnl < pt; ++pnl) {
        const double c = f.support_lo + (pnl + 0.5) * w;
        for (int j = 0; j < 10; ++j) {
            const double t = c + h * detail::kGL10Nodes[j];
            const MRParts in = inner(t);
            const double fw = f(t) * detail::kGL10Weights[j];
            out.m += fw * in.m;
            out.r += fw * in.r;
        }
    }
    out.m *= h;
    out.r *= h;
    return out;
}

} // namespace fracwave
