#include "fracwave/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "fracwave/detail/gauss.hpp"
#include "fracwave/mollifier.hpp"

namespace fracwave {

namespace {
double raw_bump(double t, double a, double b) {
    if (t <= a || t >= b) return 0.0;
    return std::exp(-1.0 / ((t - a) * (b - t)));
}
} // namespace

TimeTestFunction TimeTestFunction::bump_on(double a, double b, double amplitude) {
    if (!(a >= 0.0 && a < b && b <= 1.0)) throw DomainError("TimeTestFunction: support must lie in [0,1]");
    TimeTestFunction f;
    f.support_lo = a;
    f.support_hi = b;
    f.amplitude = amplitude;
    f.norm_ = detail::gauss10_composite([a, b](double t) { return raw_bump(t, a, b); }, a, b, 24);
    return f;
}

double TimeTestFunction::operator()(double t) const {
    return amplitude * raw_bump(t, support_lo, support_hi) / norm_;
}

// ---------------------------------------------------------------------------

struct PhiTransform::Tables {
    double lo, hi, amp;
    double step = 1.0 / 16.0;
    double z_max_big = 4096.0; // F_0..F_2
    double z_max_small = 96.0; // F_3, F_4
    std::vector<cplx> f[5];
    std::vector<double> moments; // m_0..m_32

    cplx lookup(const std::vector<cplx>& tab, double z) const {
        const double az = std::abs(z);
        const double x = az / step;
        const int n = int(tab.size());
        if (x >= n - 4) return {0.0, 0.0};
        int i0 = int(x) - 2;
        i0 = std::clamp(i0, 0, n - 6);
        cplx acc{0.0, 0.0};
        for (int j = 0; j < 6; ++j) {
            double lagr = 1.0;
            for (int m = 0; m < 6; ++m)
                if (m != j) lagr *= (x - (i0 + m)) / double(j - m);
            acc += lagr * tab[i0 + j];
        }
        return z >= 0.0 ? acc : std::conj(acc);
    }
};

PhiTransform::PhiTransform(const TimeTestFunction& phi) : phi_(phi) {
    auto t = std::make_shared<Tables>();
    t->lo = phi.support_lo;
    t->hi = phi.support_hi;
    t->amp = phi.amplitude;
    t->moments.resize(33);
    for (int k = 0; k <= 32; ++k)
        t->moments[k] = detail::gauss10_composite(
            [&](double x) { return phi(x) * std::pow(x, k); }, t->lo, t->hi, 24);

    const int n_big = int(t->z_max_big / t->step) + 6;
    const int n_small = int(t->z_max_small / t->step) + 6;
    for (int q = 0; q <= 2; ++q) t->f[q].resize(n_big);
    for (int q = 3; q <= 4; ++q) t->f[q].resize(n_small);

    auto fill = [&](int i_begin, int i_end) {
        for (int i = i_begin; i < i_end; ++i) {
            const double z = i * t->step;
            const int panels = detail::panels_for_frequency(z, t->hi - t->lo, 4);
            cplx acc[5] = {};
            const double w = (t->hi - t->lo) / panels;
            for (int p = 0; p < panels; ++p) {
                const double c = t->lo + (p + 0.5) * w;
                for (int j = 0; j < 10; ++j) {
                    const double x = c + 0.5 * w * detail::kGL10Nodes[j];
                    const cplx e = phi(x) * detail::kGL10Weights[j] *
                                   std::exp(cplx(0.0, z * x));
                    double xq = 1.0;
                    acc[0] += e;
                    for (int q = 1; q <= 4; ++q) {
                        xq *= x;
                        acc[q] += e * xq;
                    }
                }
            }
            for (int q = 0; q <= 2; ++q) t->f[q][i] = acc[q] * (0.5 * w);
            if (i < n_small)
                for (int q = 3; q <= 4; ++q) t->f[q][i] = acc[q] * (0.5 * w);
        }
    };
    if (phi.is_zero()) {
        // tables stay zero
    } else {
        std::thread worker(fill, 0, n_big / 2);
        fill(n_big / 2, n_big);
        worker.join();
    }
    t_ = std::move(t);
}

double PhiTransform::moment(int k) const { return t_->moments.at(k); }

cplx PhiTransform::F(int q, double z) const { return t_->lookup(t_->f[q], z); }

cplx PhiTransform::m_scalar(double z) const {
    if (std::abs(z) < 1.0) {
        // sum_j (iz)^j m_{j+1} / (j+1)!
        cplx term = 1.0, acc = t_->moments[1];
        for (int j = 1; j <= 24; ++j) {
            term *= cplx(0.0, z) / double(j);
            acc += term * t_->moments[j + 1] / double(j + 1);
        }
        return acc;
    }
    return (F(0, z) - t_->moments[0]) / (I_UNIT * z);
}

cplx PhiTransform::m_derivative(double z) const {
    if (std::abs(z) < 1.0) {
        // M(z) = sum_j m_{j+1}/(j+1)! (iz)^j differentiated term-wise:
        // M'(z) = sum_{j>=1} i j (iz)^{j-1} m_{j+1}/(j+1)!
        cplx acc{0.0, 0.0};
        cplx izp = 1.0;    // (iz)^{j-1}
        double fact = 2.0; // (j+1)!
        for (int j = 1; j <= 28; ++j) {
            acc += I_UNIT * double(j) * izp * t_->moments[j + 1] / fact;
            izp *= cplx(0.0, z);
            fact *= double(j + 2);
        }
        return acc;
    }
    const cplx f0 = F(0, z), f1 = F(1, z);
    return (z * f1 + I_UNIT * (f0 - t_->moments[0])) / (z * z);
}

cplx PhiTransform::m_second_derivative(double z) const {
    if (std::abs(z) < 1.0) {
        // M''(z) = -sum_{j>=2} j(j-1) (iz)^{j-2} m_{j+1}/(j+1)!
        cplx acc{0.0, 0.0};
        cplx izp = 1.0;    // (iz)^{j-2}
        double fact = 6.0; // (j+1)!
        for (int j = 2; j <= 28; ++j) {
            acc -= double(j) * double(j - 1) * izp * t_->moments[j + 1] / fact;
            izp *= cplx(0.0, z);
            fact *= double(j + 2);
        }
        return acc;
    }
    const cplx f0 = F(0, z), f1 = F(1, z), f2 = F(2, z);
    const double z3 = z * z * z;
    return (I_UNIT * z * z * f2 - 2.0 * z * f1 - 2.0 * I_UNIT * (f0 - t_->moments[0])) / z3;
}

cplx PhiTransform::phase_diff_quotient(double b, double nu) const {
    if (std::abs(nu) < 0.02) {
        const cplx inu(0.0, nu);
        return F(1, b) + inu * (F(2, b) / 2.0 + inu * (F(3, b) / 6.0 + inu * F(4, b) / 24.0));
    }
    return (F(0, b + nu) - F(0, b)) / (I_UNIT * nu);
}

cplx PhiTransform::v_kernel(int k, double nu) const {
    if (std::abs(nu) < 1.0) {
        // From \int_0^t (t-u)^k u^j du = t^{k+j+1} k! j! / (k+j+1)!:
        //   V_k(nu) = sum_j c_j m_{k+j+1},  c_0 = 1/(k+1),  c_j = c_{j-1} (i nu)/(k+j+1).
        cplx c = 1.0 / double(k + 1);
        cplx acc = c * t_->moments[k + 1];
        for (int j = 1; k + j + 1 <= 31; ++j) {
            c *= cplx(0.0, nu) / double(k + j + 1);
            const cplx contrib = c * t_->moments[k + j + 1];
            acc += contrib;
            if (std::abs(contrib) < 1e-18 * (std::abs(acc) + 1e-300)) break;
        }
        return acc;
    }
    // V_0 = M(nu); V_k = (k V_{k-1} - m_k)/(i nu)
    cplx v = m_scalar(nu);
    const cplx inu(0.0, nu);
    for (int j = 1; j <= k; ++j) v = (double(j) * v - t_->moments[j]) / inu;
    return v;
}

// ---------------------------------------------------------------------------

double SpatialBump::operator()(Eigen::Ref<const Eigen::VectorXd> x) const {
    double v = amplitude;
    for (Eigen::Index i = 0; i < x.size(); ++i) v *= detail::unit_bump_value(x[i] / sigma);
    return v;
}

double SpatialBump::ft_axis(double z) const {
    return sigma * detail::unit_bump_ft_raw(sigma * z);
}

double SpatialBump::ft(Eigen::Ref<const Eigen::VectorXd> eta) const {
    double v = amplitude;
    for (Eigen::Index i = 0; i < eta.size(); ++i) v *= ft_axis(eta[i]);
    return v;
}

ClassETestFunction::ClassETestFunction(TimeTestFunction phi_, SpatialBump psi_)
    : phi(phi_), psi(psi_) {
    if (phi.is_zero()) throw DomainError("ClassETestFunction: phi must be nonzero");
    if (!(phi.support_lo >= 0.0 && phi.support_hi <= 1.0))
        throw DomainError("ClassETestFunction: supp phi must lie in (0,1)");
    // mass of phi on (3/4, 1)
    if (phi.support_hi > 0.75) {
        const double lo = std::max(0.75, phi.support_lo);
        const double mass = detail::gauss10_composite([&](double t) { return phi(t); }, lo,
                                                      phi.support_hi, 12);
        if (!(mass > 0.0)) throw DomainError("ClassETestFunction: \\int_{3/4}^1 phi must be positive");
    } else {
        throw DomainError("ClassETestFunction: \\int_{3/4}^1 phi must be positive");
    }
    // inf over |theta| <= 1 of |ft(psi)|^2; ft is a decreasing-per-axis product
    // near the origin but scan a grid to be safe.
    double inf_sq = std::numeric_limits<double>::infinity();
    const int grid = 33;
    Eigen::VectorXd theta(psi.d);
    std::vector<int> idx(psi.d, 0);
    const auto scan = [&](auto&& self, int axis) -> void {
        if (axis == psi.d) {
            if (theta.norm() <= 1.0 + 1e-12) {
                const double v = psi.ft(theta);
                inf_sq = std::min(inf_sq, v * v);
            }
            return;
        }
        for (int i = 0; i < grid; ++i) {
            theta[axis] = -1.0 + 2.0 * i / (grid - 1);
            self(self, axis + 1);
        }
    };
    scan(scan, 0);
    const double at0 = psi.ft(Eigen::VectorXd::Zero(psi.d));
    if (!(inf_sq > 0.1 * at0 * at0))
        throw DomainError("ClassETestFunction: F_x(psi) too small on the unit ball; shrink sigma");
    inf_ft_sq = inf_sq;
}

ClassETestFunction ClassETestFunction::standard(int d) {
    SpatialBump psi;
    psi.d = d;
    psi.sigma = 0.5;
    return ClassETestFunction(TimeTestFunction::standard(), psi);
}

bool cone_contains(int d, Eigen::Ref<const Eigen::VectorXd> x) {
    if (x.size() != d) throw DomainError("cone_contains: dimension mismatch");
    const double r = x.norm();
    if (!(r > 0.0)) return false;
    if (d == 1) return x[0] > 0.0;
    // Recover spherical angles of the parametrization
    //   x_1 = r cos t1, x_2 = r sin t1 cos t2, ..., x_d = r prod sin t_i.
    double tail = r;
    constexpr double lo = M_PI / 8.0, hi = 3.0 * M_PI / 8.0;
    for (int i = 0; i + 1 < d; ++i) {
        if (!(tail > 0.0)) return false;
        const double c = x[i] / tail;
        if (!(c >= -1.0 && c <= 1.0)) return false;
        const double theta = std::acos(c);
        if (theta < lo - 1e-12 || theta > hi + 1e-12) return false;
        tail *= std::sin(theta);
    }
    return x[d - 1] > 0.0 && std::abs(tail - x[d - 1]) <= 1e-9 * r;
}

} // namespace fracwave
