#include "fracwave/field_sim.hpp"

#include <cmath>

#include "fracwave/detail/gauss.hpp"
#include "fracwave/duhamel.hpp"
#include "fracwave/spectral_density.hpp"

namespace fracwave {

namespace {

struct AxisCells {
    std::vector<double> lo, hi, mid, mass; // signed cells, ascending order
};

// 2*m signed cells on [-R, R], geometric (ratio 2) toward 0, 0 on a boundary.
AxisCells axis_partition(double hurst, double R, int m) {
    AxisCells ax;
    std::vector<double> b(m + 1);
    b[0] = 0.0;
    for (int k = 1; k <= m; ++k) b[k] = R * std::ldexp(1.0, k - m);
    for (int k = m; k >= 1; --k) {
        ax.lo.push_back(-b[k]);
        ax.hi.push_back(-b[k - 1]);
    }
    for (int k = 1; k <= m; ++k) {
        ax.lo.push_back(b[k - 1]);
        ax.hi.push_back(b[k]);
    }
    for (size_t i = 0; i < ax.lo.size(); ++i) {
        ax.mid.push_back(0.5 * (ax.lo[i] + ax.hi[i]));
        ax.mass.push_back(power_law_mass(hurst, std::min(std::abs(ax.lo[i]), std::abs(ax.hi[i])),
                                         std::max(std::abs(ax.lo[i]), std::abs(ax.hi[i]))));
    }
    return ax;
}

} // namespace

SpectralGrid SpectralGrid::make(int d, const HurstVector& H, int n, const MollifierSpec& mol,
                                double r_xi, int cells_per_half) {
    H.validate();
    if (H.d != d) throw DomainError("SpectralGrid: dimension mismatch");
    if (n < 1) throw DomainError("SpectralGrid: n must be >= 1");
    if (cells_per_half < 1) throw DomainError("SpectralGrid: need at least one cell per half axis");

    std::vector<AxisCells> axes;
    axes.push_back(axis_partition(H.h[0], r_xi, cells_per_half));
    for (int i = 1; i <= d; ++i) axes.push_back(axis_partition(H.h[i], double(n), cells_per_half));

    const int per_axis = 2 * cells_per_half;
    int total = 1;
    for (int i = 0; i <= d; ++i) total *= per_axis;

    SpectralGrid g;
    g.d_ = d;
    g.n_ = n;
    g.mid_.resize(d + 1, total);
    g.mass_.resize(total);
    g.refl_.resize(total);

    Eigen::VectorXd eta(d);
    for (int c = 0; c < total; ++c) {
        int rem = c, rc = 0, stride = 1;
        double mass = 1.0;
        for (int ax = 0; ax <= d; ++ax) {
            const int idx = rem % per_axis;
            rem /= per_axis;
            g.mid_(ax, c) = axes[ax].mid[idx];
            mass *= axes[ax].mass[idx];
            rc += (per_axis - 1 - idx) * stride;
            stride *= per_axis;
        }
        g.refl_[c] = rc;
        for (int i = 0; i < d; ++i) eta[i] = g.mid_(i + 1, c);
        const double mf = mollifier_ft(mol, n, g.mid_(0, c), eta);
        g.mass_[c] = mass * mf * mf;
        if (g.mid_(0, c) > 0.0) g.canonical_.push_back(c);
    }

    uint64_t h = detail::splitmix64(uint64_t(d) * 131 + uint64_t(n));
    h = detail::splitmix64(h ^ uint64_t(total));
    h = detail::splitmix64(h ^ uint64_t(std::llround(r_xi * 4096.0)));
    for (int i = 0; i <= d; ++i) h = detail::splitmix64(h ^ uint64_t(std::llround(H.h[i] * 1e9)));
    g.hash_ = h;
    return g;
}

double SpectralGrid::covariance(double t, Eigen::Ref<const Eigen::VectorXd> y, double tt,
                                Eigen::Ref<const Eigen::VectorXd> yy) const {
    const std::optional<double> cutoff{double(n_)};
    cplx acc{0.0, 0.0};
    for (int c = 0; c < cell_count(); ++c) {
        const double a = eta_mag(c);
        const cplx d1 = duhamel(cutoff, t, xi(c), a);
        const cplx d2 = duhamel(cutoff, tt, xi(c), a);
        const double ph = xi(c) * (t - tt) + mid_.col(c).tail(d_).dot(y - yy);
        acc += mass_[c] * std::exp(I_UNIT * ph) * d1 * std::conj(d2);
    }
    return acc.real();
}

double SpectralGrid::wick_counterterm(double t) const {
    const std::optional<double> cutoff{double(n_)};
    double acc = 0.0;
    for (int c = 0; c < cell_count(); ++c)
        acc += mass_[c] * std::norm(duhamel(cutoff, t, xi(c), eta_mag(c)));
    return acc;
}

NoiseDraw draw_noise(const SpectralGrid& grid, uint64_t seed, uint64_t replica) {
    NoiseDraw draw;
    draw.grid = &grid;
    draw.seed = seed;
    draw.replica = replica;
    draw.z.setZero(grid.cell_count());
    const CounterRng rng(seed, stream_id(0xf1e1d, replica));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    uint64_t k = 0;
    for (int c : grid.canonical_cells()) {
        const auto [g1, g2] = rng.normal_pair(k++);
        const cplx z(g1 * inv_sqrt2, g2 * inv_sqrt2);
        draw.z[c] = z;
        draw.z[grid.reflection(c)] = std::conj(z);
    }
    return draw;
}

double synthesize_psi(const NoiseDraw& draw, double t, Eigen::Ref<const Eigen::VectorXd> x) {
    const SpectralGrid& g = *draw.grid;
    if (draw.z.size() != g.cell_count()) throw GridMismatch("synthesize_psi: draw/grid size mismatch");
    if (x.size() != g.d()) throw GridMismatch("synthesize_psi: spatial dimension mismatch");
    const std::optional<double> cutoff{double(g.n())};
    cplx acc{0.0, 0.0};
    for (int c = 0; c < g.cell_count(); ++c) {
        const double ph = g.xi(c) * t + g.eta(c).dot(x);
        acc += std::sqrt(g.mass(c)) * draw.z[c] * std::exp(I_UNIT * ph) *
               duhamel(cutoff, t, g.xi(c), g.eta_mag(c));
    }
    const double scale = std::max(1.0, std::abs(acc.real()));
    if (std::abs(acc.imag()) > 1e-10 * scale)
        throw GridMismatch("synthesize_psi: Hermitian symmetry violated");
    return acc.real();
}

double wick_square(const NoiseDraw& draw, double t, Eigen::Ref<const Eigen::VectorXd> x) {
    const double psi = synthesize_psi(draw, t, x);
    return psi * psi - draw.grid->wick_counterterm(t);
}

PairingOperator::PairingOperator(const SpectralGrid& grid, const ClassETestFunction& Phi,
                                 const PhiTransform& phi, const KernelBudget& budget)
    : grid_(&grid), phi_(&phi), time_fn_(phi.phi()) {
    const int N = grid.cell_count();
    a_.resize(N, N);
    psi_at_zero_ = Phi.psi.ft(Eigen::VectorXd::Zero(grid.d()));
    for (int c = 0; c < N; ++c) {
        for (int cc = c; cc < N; ++cc) {
            const Eigen::VectorXd sum = grid.eta(c) + grid.eta(cc);
            CherryPoint p;
            p.theta = grid.xi(c) + grid.xi(cc);
            p.xi = grid.xi(c);
            p.a = grid.eta_mag(c);
            p.xit = grid.xi(cc);
            p.at = grid.eta_mag(cc);
            p.b = sum.norm();
            const cplx w = cherry_kernel_phi(phi, double(grid.n()), p, budget);
            const cplx a = std::sqrt(grid.mass(c) * grid.mass(cc)) * Phi.psi.ft(sum) * w;
            a_(c, cc) = a;
            a_(cc, c) = a;
        }
    }
    std_offset_ = 0.0;
    for (int c = 0; c < N; ++c) std_offset_ += a_(c, grid.reflection(c)).real();
}

double PairingOperator::pair(const NoiseDraw& draw, CnMode mode,
                             const std::function<double(double)>& custom_cn) const {
    if (draw.grid != grid_) throw GridMismatch("pair: draw built for a different grid");
    const cplx q = (a_ * draw.z).cwiseProduct(draw.z).sum();
    double offset = 0.0;
    switch (mode) {
        case CnMode::StandardWick: offset = std_offset_; break;
        case CnMode::None: offset = 0.0; break;
        case CnMode::Custom: {
            if (!custom_cn) throw DomainError("pair: Custom mode needs a counterterm function");
            // <G^n * [1 c], Phi> = F_x(psi)(0) \int phi(t) \int_0^t (t-u) c(u) du dt
            const auto inner = [&](double t) {
                return detail::gauss10_composite(
                    [&](double u) { return (t - u) * custom_cn(u); }, 0.0, t, 8);
            };
            offset = psi_at_zero_ *
                     detail::gauss10_composite(
                         [&](double t) { return time_fn_(t) * inner(t); }, time_fn_.support_lo,
                         time_fn_.support_hi, 8);
            break;
        }
    }
    const double scale = std::max(1.0, std::abs(q.real()));
    if (std::abs(q.imag()) > 1e-9 * scale)
        throw GridMismatch("pair: quadratic form not real; Hermitian structure broken");
    return q.real() - offset;
}

double PairingOperator::second_moment_exact() const { return 2.0 * a_.squaredNorm(); }

EmpiricalMoment estimate_pairing_moment(const PairingOperator& op, long replicas, uint64_t seed,
                                        CnMode mode, const std::function<double(double)>& custom_cn) {
    if (replicas < 2) throw DomainError("estimate_pairing_moment: need at least 2 replicas");
    double s = 0.0, s2 = 0.0;
    for (long r = 0; r < replicas; ++r) {
        const NoiseDraw draw = draw_noise(op.grid(), seed, uint64_t(r));
        const double v = op.pair(draw, mode, custom_cn);
        s += v * v;
        s2 += v * v * v * v;
    }
    EmpiricalMoment m;
    m.replicas = replicas;
    m.seed = seed;
    m.mean = s / double(replicas);
    const double var = std::max(0.0, s2 / replicas - m.mean * m.mean);
    m.std_error = std::sqrt(var / double(replicas));
    return m;
}

} // namespace fracwave
