#include "fracwave/levy_area.hpp"

#include <cmath>

namespace fracwave {

cplx m_phi(const PhiTransform& phi, double xi, double xit) { return phi.m_scalar(xi + xit); }

cplx r_phi(const PhiTransform& phi, double xi) { return -phi.m_scalar(xi); }

// M(xi+xit) - M(xi) without cancellation. For |xi| >= 1 the difference is
// rewritten through the phase difference quotient G(xi, xit):
//   M(z2) - M(z1) = xit [ i z1 G(z1, xit) + I0 - F0(z1) ] / (i z1 z2).
cplx m_plus_r(const PhiTransform& phi, double xi, double xit) {
    const double z2 = xi + xit;
    if (std::abs(xit) >= 0.5 * std::max(1.0, std::abs(xi)))
        return phi.m_scalar(z2) - phi.m_scalar(xi);
    if (std::abs(xi) >= 1.0) {
        const cplx g = phi.phase_diff_quotient(xi, xit);
        const cplx num = I_UNIT * xi * g + (phi.moment(0) - phi.F(0, xi));
        return xit * num / (I_UNIT * xi * z2);
    }
    if (std::abs(xit) < 0.02)
        return xit * (phi.m_derivative(xi) + 0.5 * xit * phi.m_second_derivative(xi));
    return phi.m_scalar(z2) - phi.m_scalar(xi);
}

namespace {

// Truncation radius where |F rho(2^{-n} xi)|^2 is negligible.
double outer_radius(const MollifierSpec& spec, int n) {
    const double base = spec.kind == MollifierKind::GaussianProduct ? 6.5 / spec.scale : 220.0 / spec.scale;
    return base * std::ldexp(1.0, n);
}

} // namespace

QuadratureResult levy_second_moment(const LevyAreaConfig& cfg, const PhiTransform& phi, int n) {
    if (n < 0) throw DomainError("levy_second_moment: n must be nonnegative");
    if (phi.phi().is_zero()) return {0.0, 0.0, 0};
    const double H = cfg.hurst;
    if (!(H > 0.0 && H < 1.0)) throw DomainError("levy_second_moment: H outside (0,1)");
    const double R = outer_radius(cfg.mollifier, n);
    const double collar = 1e-3;

    QuadratureOptions inner_opts;
    inner_opts.abs_tol = 0.0; // relative control below
    inner_opts.rel_tol = cfg.tol * 0.05;

    auto inner_value = [&](double xi) {
        auto g = [&](double xit) {
            const double molsq = mollifier_sq_1d(cfg.mollifier, n, xit);
            const cplx d = m_plus_r(phi, xi, xit);
            return std::pow(std::abs(xit), -(2.0 * H + 1.0)) * molsq * std::norm(d);
        };
        // collar integrand: |xit|^{1-2H} |M'(xi) + xit M''(xi)/2|^2, graded at 0
        auto g_collar = [&](double xit) {
            const cplx lin = phi.m_derivative(xi) + 0.5 * xit * phi.m_second_derivative(xi);
            const double molsq = mollifier_sq_1d(cfg.mollifier, n, xit);
            return std::pow(std::abs(xit), 1.0 - 2.0 * H) * molsq * std::norm(lin);
        };
        const double beta = 2.0 * H - 1.0;
        double v = 0.0;
        Interval neg{-R, -collar};
        neg.breakpoints = {-2.0 * xi, -xi, -0.5 * xi};
        v += integrate_1d(g, neg, inner_opts).value;
        Interval cneg{-collar, 0.0};
        cneg.singular_beta_b = beta;
        v += integrate_1d(g_collar, cneg, inner_opts).value;
        Interval cpos{0.0, collar};
        cpos.singular_beta_a = beta;
        v += integrate_1d(g_collar, cpos, inner_opts).value;
        Interval pos{collar, R};
        v += integrate_1d(g, pos, inner_opts).value;
        return v;
    };

    QuadratureOptions outer_opts;
    outer_opts.abs_tol = 0.0;
    outer_opts.rel_tol = cfg.tol;
    auto f = [&](double xi) {
        return std::pow(xi, 1.0 - 2.0 * H) * mollifier_sq_1d(cfg.mollifier, n, xi) * inner_value(xi);
    };
    // symmetry (xi,xit) -> (-xi,-xit): integrate xi > 0 and double
    Interval outer{0.0, R};
    outer.singular_beta_a = 2.0 * H - 1.0;
    auto r = integrate_1d(f, outer, outer_opts);
    r.value *= 2.0;
    r.abs_error_estimate *= 2.0;
    return r;
}

std::pair<double, double> levy_m_split(const LevyAreaConfig& cfg, const PhiTransform& phi, int n) {
    if (n < 0) throw DomainError("levy_m_split: n must be nonnegative");
    if (phi.phi().is_zero()) return {0.0, 0.0};
    const double H = cfg.hurst;
    const double R = outer_radius(cfg.mollifier, n);

    QuadratureOptions inner_opts;
    inner_opts.rel_tol = cfg.tol * 0.05;
    inner_opts.abs_tol = 0.0;
    QuadratureOptions outer_opts;
    outer_opts.rel_tol = cfg.tol;
    outer_opts.abs_tol = 0.0;

    auto run = [&](auto&& factor) {
        auto f = [&](double xi) {
            auto g = [&](double xit) {
                return std::pow(xit, -(2.0 * H + 1.0)) * mollifier_sq_1d(cfg.mollifier, n, xit) *
                       factor(xi, xit);
            };
            const double inner =
                integrate_1d(g, Interval{xi, 2.0 * xi}, inner_opts).value;
            return std::pow(xi, 1.0 - 2.0 * H) * mollifier_sq_1d(cfg.mollifier, n, xi) * inner;
        };
        return integrate_1d(f, Interval{1.0, R}, outer_opts).value;
    };

    const double j_m = run([&](double xi, double xit) {
        return std::norm(m_phi(phi, xi, -xit)); // M at xi - xit
    });
    const double j_mr = run([&](double xi, double xit) {
        const cplx m = m_phi(phi, xi, -xit);
        const cplx r = r_phi(phi, xi);
        return 2.0 * (m * std::conj(r)).real() + std::norm(r);
    });
    return {j_m, j_mr};
}

} // namespace fracwave
