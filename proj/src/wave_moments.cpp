#include "fracwave/wave_moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <thread>

#include "fracwave/detail/gauss.hpp"
#include "fracwave/duhamel.hpp"
#include "fracwave/rng.hpp"
#include "fracwave/sampling.hpp"
#include "fracwave/spectral_density.hpp"

namespace fracwave {

namespace {

// ---------------------------------------------------------------------------
// \int_0^t (t-s) |D^n(s; xi, a)|^2 ds in closed form away from the resonance
// set, numeric (cheap, bounded frequencies) otherwise.

// C1(z, t) = \int_0^t (t-s) |E(z,s)|^2 ds = (2/z^2)(t^2/2 - (1-cos zt)/z^2)
double c1_weighted(double z, double t) {
    const double zt = z * t;
    if (std::abs(zt) < 0.3) {
        const double x = zt * zt;
        const double t4 = t * t * t * t;
        return t4 / 12.0 * (1.0 - x / 30.0 * (1.0 - x * 3.0 / 168.0));
    }
    return (2.0 / (z * z)) * (0.5 * t * t - (1.0 - std::cos(zt)) / (z * z));
}

double second_moment_time_integral(std::optional<double> cutoff, double t, double xi, double a) {
    if (cutoff && a > *cutoff) return 0.0;
    if (t <= 0.0) return 0.0;
    const double z1 = a - xi, z2 = a + xi;
    const double axi = std::abs(xi);

    if (a * t < 0.1 && axi * t >= 2.0) {
        // |D|^2 ~ |om_1(-xi, s)|^2: closed pieces, stable for |xi| t >= 2
        const double z = -xi;
        const cplx m1 = om(1, z, t), m2 = om(2, z, t);
        const double t3 = t * t * t;
        const cplx mid = (t * m1 - m2 - t3 / 6.0) / (I_UNIT * z);
        return (t * t3 / 12.0 - 2.0 * mid.real() + c1_weighted(z, t)) / (z * z);
    }
    const double gap = std::min({std::abs(z1), std::abs(z2), 2.0 * a});
    if (gap * t >= 6.0) {
        // cross term \int (t-s) E(z1,s) E(z2,s) ds via P(w) = omc_q(1, w, t)
        const cplx bracket =
            omc_q(1, z1 + z2, t) - omc_q(1, z1, t) - omc_q(1, z2, t) + cplx(0.5 * t * t, 0.0);
        const cplx cross = -bracket / (z1 * z2);
        return (c1_weighted(z1, t) + c1_weighted(z2, t) - 2.0 * cross.real()) / (4.0 * a * a);
    }
    // numeric: frequencies are bounded here (resonance forces |xi| ~ a <= n)
    const double freq = 2.0 * (std::abs(z1) + std::abs(z2)) + 2.0 * a;
    const int panels = std::clamp(detail::panels_for_frequency(freq, t, 2), 2, 64);
    return detail::gauss10_composite(
        [&](double s) {
            const cplx d = duhamel(cutoff, s, xi, a);
            return (t - s) * std::norm(d);
        },
        0.0, t, panels);
}

// Angular constant \int_0^{2pi} |cos|^{p} |sin|^{q} dtheta.
double angular_constant(double p, double q) {
    return 2.0 * std::tgamma(0.5 * (p + 1.0)) * std::tgamma(0.5 * (q + 1.0)) /
           std::tgamma(0.5 * (p + q + 2.0));
}

double mollifier_radius(const MollifierSpec& spec, int n) {
    const double base = spec.kind == MollifierKind::GaussianProduct ? 6.5 / spec.scale : 220.0 / spec.scale;
    return base * std::ldexp(1.0, n);
}

// ---------------------------------------------------------------------------
// Monte Carlo engine over mu^(n) x mu^(n) with a mixture proposal on the
// time-frequency axes (resonant window + full mollifier range).

struct MuPairSampler {
    int d;
    HurstVector H;
    int n;
    MollifierSpec mol;
    double r_lo, r_hi, eta_r;
    double z_lo, z_hi;   // xi-axis masses
    double eta_mass;     // product of eta-axis masses
    double w_in, w_out;  // xi weight ratios inside/outside the low window

    MuPairSampler(int d_, const HurstVector& H_, int n_, const MollifierSpec& mol_)
        : d(d_), H(H_), n(n_), mol(mol_) {
        eta_r = double(n);
        r_hi = std::ldexp(2.0, n); // 2^{n+1}
        r_lo = std::min(4.0 * (n + 3.0), r_hi);
        const double p0 = 2.0 - 2.0 * H.h[0];
        z_lo = 2.0 * std::pow(r_lo, p0) / p0;
        z_hi = 2.0 * std::pow(r_hi, p0) / p0;
        w_in = 2.0 * z_lo * z_hi / (z_lo + z_hi);
        w_out = 2.0 * z_hi;
        eta_mass = 1.0;
        for (int i = 1; i <= d; ++i) {
            const double p = 2.0 - 2.0 * H.h[i];
            eta_mass *= 2.0 * std::pow(eta_r, p) / p;
        }
    }

    // uniforms consumed per mu-factor: 2 for xi (branch + value) + d for eta
    int slots() const { return 2 + d; }

    double sample_xi(const CounterRng& rng, uint64_t base, double* weight) const {
        const double ub = rng.uniform(base);
        const double uv = rng.uniform(base + 1);
        const double r = ub < 0.5 ? r_lo : r_hi;
        const double p0 = 2.0 - 2.0 * H.h[0];
        const bool neg = uv < 0.5;
        const double v = neg ? 1.0 - 2.0 * uv : 2.0 * uv - 1.0;
        const double mag = r * std::pow(v, 1.0 / p0);
        *weight *= (mag <= r_lo ? w_in : w_out);
        return neg ? -mag : mag;
    }

    void sample_eta(const CounterRng& rng, uint64_t base, Eigen::VectorXd& eta,
                    double* weight) const {
        for (int i = 0; i < d; ++i) {
            const double u = rng.uniform(base + i);
            const double p = 2.0 - 2.0 * H.h[i + 1];
            const bool neg = u < 0.5;
            const double v = neg ? 1.0 - 2.0 * u : 2.0 * u - 1.0;
            const double mag = eta_r * std::pow(v, 1.0 / p);
            eta[i] = neg ? -mag : mag;
        }
        *weight *= eta_mass;
    }
};

struct PairSample {
    double xi, xit;
    Eigen::VectorXd eta, etat;
    double weight;
};

template <typename F>
McEstimate mc_pair_integral(const MuPairSampler& sampler, long samples, uint64_t seed,
                            uint64_t stream, int threads, F&& f) {
    const long chunk = 4096;
    const long n_chunks = (samples + chunk - 1) / chunk;
    std::vector<double> sums(n_chunks, 0.0), sqs(n_chunks, 0.0);
    const CounterRng rng(seed, stream);
    const int slots2 = 2 * sampler.slots();

    auto work = [&](long c0, long step) {
        Eigen::VectorXd eta(sampler.d), etat(sampler.d);
        for (long c = c0; c < n_chunks; c += step) {
            double s = 0.0, s2 = 0.0;
            const long j0 = c * chunk, j1 = std::min(samples, j0 + chunk);
            for (long j = j0; j < j1; ++j) {
                const uint64_t base = uint64_t(j) * slots2;
                double w = 1.0;
                const double xi = sampler.sample_xi(rng, base, &w);
                sampler.sample_eta(rng, base + 2, eta, &w);
                const double xit = sampler.sample_xi(rng, base + sampler.slots(), &w);
                sampler.sample_eta(rng, base + sampler.slots() + 2, etat, &w);
                const double m1 = mollifier_ft(sampler.mol, sampler.n, xi, eta);
                const double m2 = mollifier_ft(sampler.mol, sampler.n, xit, etat);
                w *= m1 * m1 * m2 * m2;
                const double v = w * f(xi, eta, xit, etat);
                s += v;
                s2 += v * v;
            }
            sums[c] = s;
            sqs[c] = s2;
        }
    };
    const int nt = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int k = 1; k < nt; ++k) pool.emplace_back(work, k, nt);
    work(0, nt);
    for (auto& th : pool) th.join();

    double s = 0.0, s2 = 0.0;
    for (long c = 0; c < n_chunks; ++c) {
        s += sums[c];
        s2 += sqs[c];
    }
    McEstimate est;
    est.samples = samples;
    est.value = s / double(samples);
    const double var = std::max(0.0, s2 / samples - est.value * est.value);
    est.std_error = std::sqrt(var / double(samples));
    return est;
}

} // namespace

// ---------------------------------------------------------------------------

GrowthFit recov_decay_probe(int n, double h0, double s, const std::vector<double>& eta_mags,
                            double kappa, double eps, double tol) {
    if (!(h0 > 0.0 && h0 < 1.0)) throw DomainError("recov_decay_probe: H_0 outside (0,1)");
    if (!(kappa >= 0.0 && kappa < std::min(h0, 0.5)))
        throw DomainError("recov_decay_probe: kappa outside [0, min(H_0,1/2))");
    if (!(eps > 0.0 && eps < 0.5 - kappa))
        throw DomainError("recov_decay_probe: eps outside (0, 1/2-kappa)");
    if (eta_mags.size() < 3) throw DegenerateInput("recov_decay_probe: need >= 3 magnitudes");

    std::vector<std::pair<double, double>> pts;
    QuadratureOptions opts;
    opts.rel_tol = tol;
    opts.abs_tol = 0.0;
    const std::optional<double> cutoff{double(n)};
    for (double a : eta_mags) {
        auto f = [&](double xi) {
            return std::pow(std::abs(xi), 1.0 - 2.0 * h0) * std::norm(duhamel(cutoff, s, xi, a));
        };
        // even in xi; resonance bumps at xi = a
        Interval iv{0.0, std::max(8.0 * a, 64.0)};
        iv.singular_beta_a = 2.0 * h0 - 1.0;
        iv.breakpoints = {0.5 * a, a, 2.0 * a};
        double L = 0.0;
        try {
            L = 2.0 * integrate_tail_doubling(f, iv, opts).value;
        } catch (const NonConvergence& nc) {
            L = 2.0 * nc.best_estimate;
        }
        pts.emplace_back(a, L);
    }
    GrowthFit fit;
    bool degenerate = false;
    for (auto& [a, L] : pts)
        if (!(L > 0.0)) degenerate = true;
    if (degenerate) {
        fit.residual = std::numeric_limits<double>::infinity();
        return fit;
    }
    // least squares of log2 L against log2 a; decay exponent = -slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [a, L] : pts) {
        const double x = std::log2(a), y = std::log2(L);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = double(pts.size());
    const double det = m * sxx - sx * sx;
    fit.slope = -(m * sxy - sx * sy) / det; // positive = decay exponent
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (auto& [a, L] : pts) {
        const double r = std::log2(L) - (-fit.slope * std::log2(a) + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / m);
    fit.n_range = {int(std::lround(std::log2(pts.front().first))),
                   int(std::lround(std::log2(pts.back().first)))};
    return fit;
}

CherryIaResult cherry_moment_ia(int d, const HurstVector& H, double t, double gamma, int n,
                                const WeightSpec& weight, const MollifierSpec& mol,
                                const McOptions& opts) {
    if (classify_regime(d, H) != RegimeLabel::RegularNoRenorm)
        throw DomainError("cherry_moment_ia: regime is not RegularNoRenorm");
    if (!valid_exponent_range(d, H, RegimeLabel::RegularNoRenorm).contains(gamma))
        throw DomainError("cherry_moment_ia: gamma outside the admissible band");
    if (t < 0.0) throw DomainError("cherry_moment_ia: t must be nonnegative");
    CherryIaResult out;
    if (t == 0.0) return out;
    if (d == 2 && mol.kind != MollifierKind::GaussianProduct)
        throw DomainError("cherry_moment_ia: d = 2 requires the Gaussian mollifier (radial reduction)");

    const std::optional<double> cutoff{double(n)};
    const double h0 = H.h[0];

    // deterministic I = |w|_1 | \int mu^(n) S(xi, |eta|; t) |^2
    QuadratureOptions qo;
    qo.rel_tol = opts.samples > 0 ? 1e-6 : 1e-6;
    qo.abs_tol = 0.0;
    auto inner_eta = [&](double xi) {
        auto g = [&](double r) {
            double dens;
            if (d == 1) {
                dens = 2.0 * std::pow(r, 1.0 - 2.0 * H.h[1]);
            } else {
                dens = angular_constant(1.0 - 2.0 * H.h[1], 1.0 - 2.0 * H.h[2]) *
                       std::pow(r, 1.0 + (2.0 - 2.0 * H.h_plus()));
            }
            return dens * mollifier_sq_1d(mol, n, r) * second_moment_time_integral(cutoff, t, xi, r);
        };
        Interval iv{0.0, double(n)};
        iv.singular_beta_a = d == 1 ? 2.0 * H.h[1] - 1.0 : 0.0;
        if (std::abs(xi) < n) iv.breakpoints = {std::abs(xi)};
        QuadratureOptions io = qo;
        io.rel_tol = 1e-5;
        return integrate_1d(g, iv, io).value;
    };
    auto fxi = [&](double xi) {
        return 2.0 * std::pow(xi, 1.0 - 2.0 * h0) * mollifier_sq_1d(mol, n, xi) * inner_eta(xi);
    };
    Interval oxi{0.0, std::max(64.0, 8.0 * n)};
    oxi.singular_beta_a = 2.0 * h0 - 1.0;
    oxi.breakpoints = {0.5 * double(n), double(n), 2.0 * double(n)};
    QuadratureOptions oo = qo;
    oo.rel_tol = 1e-4;
    double j_int;
    const double rmax = mollifier_radius(mol, n);
    if (oxi.b >= rmax) {
        j_int = integrate_1d(fxi, oxi, oo).value;
    } else {
        j_int = integrate_tail_doubling(fxi, oxi, oo).value;
    }
    out.i_term = weight.l1_norm() * j_int * j_int;

    // Monte Carlo II with Sobolev factor {1+|eta+etat|^2}^{1+gamma}
    MuPairSampler sampler(d, H, n, mol);
    const uint64_t stream = stream_id(0x1a, uint64_t(n), uint64_t(d));
    auto est = mc_pair_integral(
        sampler, opts.samples, opts.seed, stream, opts.threads,
        [&](double xi, const Eigen::VectorXd& eta, double xit, const Eigen::VectorXd& etat) {
            CherryPoint p;
            p.theta = xi + xit;
            p.xi = xi;
            p.a = eta.norm();
            p.xit = xit;
            p.at = etat.norm();
            p.b = (eta + etat).norm();
            const cplx T = cherry_kernel_at(double(n), t, p, opts.budget);
            const double sob = std::pow(1.0 + p.b * p.b, 1.0 + gamma);
            return sob * std::norm(T);
        });
    out.ii_term = weight.l1_norm() * est.value;
    out.std_error = 2.0 * weight.l1_norm() * est.std_error;
    out.total = out.i_term + 2.0 * out.ii_term;
    return out;
}

McEstimate cherry_moment_ib(int d, const HurstVector& H, double t, double alpha, int n,
                            const WeightSpec& weight, const MollifierSpec& mol,
                            const McOptions& opts) {
    if (classify_regime(d, H) != RegimeLabel::WickRenormalizable)
        throw DomainError("cherry_moment_ib: regime is not WickRenormalizable");
    if (!valid_exponent_range(d, H, RegimeLabel::WickRenormalizable).contains(alpha))
        throw DomainError("cherry_moment_ib: alpha outside the admissible band");
    if (t < 0.0) throw DomainError("cherry_moment_ib: t must be nonnegative");
    if (t == 0.0) return {};

    MuPairSampler sampler(d, H, n, mol);
    const uint64_t stream = stream_id(0x1b, uint64_t(n), uint64_t(d));
    auto est = mc_pair_integral(
        sampler, opts.samples, opts.seed, stream, opts.threads,
        [&](double xi, const Eigen::VectorXd& eta, double xit, const Eigen::VectorXd& etat) {
            CherryPoint p;
            p.theta = xi + xit;
            p.xi = xi;
            p.a = eta.norm();
            p.xit = xit;
            p.at = etat.norm();
            p.b = (eta + etat).norm();
            const cplx T = cherry_kernel_at(double(n), t, p, opts.budget);
            const double sob = std::pow(1.0 + p.b * p.b, 1.0 - 2.0 * alpha);
            return sob * std::norm(T);
        });
    est.value *= 2.0 * weight.l1_norm();
    est.std_error *= 2.0 * weight.l1_norm();
    return est;
}

double kh_double_integral(int d, const HurstVector& H, double alpha, double kappa, double eps,
                          double R, double tol) {
    if (!(kappa > 0.0 && eps > 0.0)) throw DomainError("kh_double_integral: kappa, eps must be > 0");
    if (!(R > 1.0)) throw DomainError("kh_double_integral: R must exceed 1");
    const double decay = 1.0 + 2.0 * H.h[0] - 2.0 * kappa - 2.0 * eps;
    if (d == 1) {
        auto K = [&](double x) {
            return std::pow(std::abs(x), 1.0 - 2.0 * H.h[1]) /
                   (1.0 + std::pow(std::abs(x), decay));
        };
        const double beta = 2.0 * H.h[1] - 1.0;
        QuadratureOptions io;
        io.rel_tol = tol * 0.2;
        io.abs_tol = 0.0;
        auto inner = [&](double x) {
            auto g = [&](double y) {
                const double dd = x - y;
                return K(y) * std::pow(1.0 + dd * dd, -2.0 * alpha);
            };
            Interval neg{-R, 0.0};
            neg.singular_beta_b = beta;
            Interval pos{0.0, R};
            pos.singular_beta_a = beta;
            if (x > 0.0 && x < R) pos.breakpoints = {x};
            return integrate_1d(g, neg, io).value + integrate_1d(g, pos, io).value;
        };
        QuadratureOptions oo;
        oo.rel_tol = tol;
        oo.abs_tol = 0.0;
        Interval out{0.0, R};
        out.singular_beta_a = beta;
        return 2.0 * integrate_1d([&](double x) { return K(x) * inner(x); }, out, oo).value;
    }
    if (d == 2) {
        // graded tensor mesh: GL10 panels on geometric segments toward 0,
        // mirrored to negative values
        const int segs = 5;
        std::vector<double> nodes, wts;
        double lo = 0.0;
        for (int s = segs - 1; s >= 0; --s) {
            const double hi2 = R * std::ldexp(1.0, -s);
            const double c = 0.5 * (lo + hi2), h = 0.5 * (hi2 - lo);
            for (int j = 0; j < 10; ++j) {
                nodes.push_back(c + h * detail::kGL10Nodes[j]);
                wts.push_back(h * detail::kGL10Weights[j]);
            }
            lo = hi2;
        }
        const int half = int(nodes.size());
        for (int i = 0; i < half; ++i) {
            nodes.push_back(-nodes[i]);
            wts.push_back(wts[i]);
        }
        const int m = int(nodes.size());
        std::vector<double> axis1(m), axis2(m); // per-axis density factors
        for (int i = 0; i < m; ++i) {
            axis1[i] = std::pow(std::abs(nodes[i]), 1.0 - 2.0 * H.h[1]);
            axis2[i] = std::pow(std::abs(nodes[i]), 1.0 - 2.0 * H.h[2]);
        }
        double total = 0.0;
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = 0; i2 < m; ++i2) {
                const double re = std::hypot(nodes[i1], nodes[i2]);
                const double ke = axis1[i1] * axis2[i2] / (1.0 + std::pow(re, decay));
                const double we = wts[i1] * wts[i2] * ke;
                if (we == 0.0) continue;
                double inner = 0.0;
                for (int j1 = 0; j1 < m; ++j1)
                    for (int j2 = 0; j2 < m; ++j2) {
                        const double rf = std::hypot(nodes[j1], nodes[j2]);
                        const double kf = axis1[j1] * axis2[j2] / (1.0 + std::pow(rf, decay));
                        const double d1 = nodes[i1] - nodes[j1], d2 = nodes[i2] - nodes[j2];
                        inner += wts[j1] * wts[j2] * kf *
                                 std::pow(1.0 + d1 * d1 + d2 * d2, -2.0 * alpha);
                    }
                total += we * inner;
            }
        return total;
    }
    throw DomainError("kh_double_integral: d must be 1 or 2");
}

McEstimate divergence_functional(int d, const HurstVector& H, const ClassETestFunction& Phi,
                                 const PhiTransform& phi, int n, const MollifierSpec& mol,
                                 const McOptions& opts) {
    if (n < 1) throw DomainError("divergence_functional: n must be >= 1");
    H.validate();
    if (Phi.psi.amplitude == 0.0) return {0.0, 0.0, opts.samples};
    MuPairSampler sampler(d, H, n, mol);
    const uint64_t stream = stream_id(0xd1, uint64_t(n), uint64_t(d));
    return mc_pair_integral(
        sampler, opts.samples, opts.seed, stream, opts.threads,
        [&](double xi, const Eigen::VectorXd& eta, double xit, const Eigen::VectorXd& etat) {
            const Eigen::VectorXd sum = eta + etat;
            CherryPoint p;
            p.theta = xi + xit;
            p.xi = xi;
            p.a = eta.norm();
            p.xit = xit;
            p.at = etat.norm();
            p.b = sum.norm();
            if (p.a > n || p.at > n || p.b > n) return 0.0;
            const double psi2 = Phi.psi.ft(sum);
            const cplx U = cherry_kernel_phi(phi, double(n), p, opts.budget);
            return psi2 * psi2 * std::norm(U);
        });
}

namespace {

// Composite GL10 nodes/weights on [a, b] with `panels` panels.
void gl_grid(double a, double b, int panels, std::vector<double>& nodes,
             std::vector<double>& wts) {
    nodes.clear();
    wts.clear();
    const double w = (b - a) / panels, h = 0.5 * w;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * w;
        for (int j = 0; j < 10; ++j) {
            nodes.push_back(c + h * detail::kGL10Nodes[j]);
            wts.push_back(h * detail::kGL10Weights[j]);
        }
    }
}

} // namespace

DivergenceSplit divergence_split(int d, const HurstVector& H, const ClassETestFunction& Phi,
                                 const PhiTransform& phi, int n, const MollifierSpec& mol,
                                 double tol) {
    if (n < 1) throw DomainError("divergence_split: n must be >= 1");
    if (d != 1) throw DomainError("divergence_split: deterministic split implemented for d = 1");
    (void)tol;
    DivergenceSplit out;
    if (Phi.psi.amplitude == 0.0 || n <= 1) return out;
    const HPrime hp = reparametrize_h_prime(d, H);
    const double h0p = hp.h_prime[0], h1p = hp.h_prime[1];

    const TimeTestFunction& f = phi.phi();
    // shared (t, v = u/t) grid; frequencies grow like a few n
    const int pt = std::clamp(2 + n / 4, 3, 8);
    const int pv = std::clamp(3 + n / 3, 4, 10);
    std::vector<double> tn, tw, vn, vw;
    gl_grid(f.support_lo, f.support_hi, pt, tn, tw);
    gl_grid(0.0, 1.0, pv, vn, vw);
    const int nt = int(tn.size()), nv = int(vn.size());

    std::vector<double> xg, xw; // octave-window nodes on (0, 1)
    gl_grid(0.0, 1.0, 2, xg, xw);
    const int nxi = int(xg.size());

    // inner (xi, xit) double integral on the windows, tensorized over the
    // shared (t, v) grid; returns (J_M, J_R, J_MR) contributions
    std::vector<cplx> common(nt * nv), P1(nxi * nt * nv), P2(nxi * nt * nv), Q1(nxi * nt * nv),
        Q2(nxi * nt * nv);
    auto inner4 = [&](double a, double at) {
        const double b = std::abs(a - at);
        const double pref = -1.0 / (4.0 * a * at);
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < nv; ++j) {
                const double t = tn[i], u = t * vn[j];
                common[i * nv + j] =
                    tw[i] * vw[j] * f(t) * t * wave_kernel_ft(t - u, b, double(n));
            }
        for (int k = 0; k < nxi; ++k) {
            const double xi = a * (1.0 + xg[k]);
            const double xit = at * (1.0 + xg[k]);
            for (int i = 0; i < nt; ++i)
                for (int j = 0; j < nv; ++j) {
                    const double t = tn[i], u = t * vn[j];
                    const cplx exi = std::exp(I_UNIT * (xi * u));
                    const cplx exit = std::exp(-I_UNIT * (xit * u));
                    const int idx = (k * nt + i) * nv + j;
                    P1[idx] = exi * phase_integral(a - xi, u);
                    P2[idx] = exi * phase_integral(-(a + xi), u);
                    Q1[idx] = exit * phase_integral(xit - at, u);
                    Q2[idx] = exit * phase_integral(xit + at, u);
                }
        }
        std::array<double, 3> acc{0.0, 0.0, 0.0};
        for (int k = 0; k < nxi; ++k) {
            const double xi = a * (1.0 + xg[k]);
            const double wxi =
                a * xw[k] * std::pow(xi, 1.0 - 2.0 * h0p) * mollifier_sq_1d(mol, n, xi);
            for (int l = 0; l < nxi; ++l) {
                const double xit = at * (1.0 + xg[l]);
                const double wxit =
                    at * xw[l] * std::pow(xit, 1.0 - 2.0 * h0p) * mollifier_sq_1d(mol, n, xit);
                cplx m{0.0, 0.0}, r{0.0, 0.0};
                for (int i = 0; i < nt; ++i) {
                    const int krow = (k * nt + i) * nv;
                    const int lrow = (l * nt + i) * nv;
                    const int crow = i * nv;
                    for (int j = 0; j < nv; ++j) {
                        const cplx c = common[crow + j];
                        const cplx p1 = P1[krow + j], p2 = P2[krow + j];
                        const cplx q1 = Q1[lrow + j], q2 = Q2[lrow + j];
                        m += c * (p1 * q1);
                        r += c * (p1 * q2 - p2 * q2 + p2 * q1);
                    }
                }
                m *= -pref; // pref * (-x v)
                r *= pref;
                const double w2 = wxi * wxit;
                acc[0] += w2 * std::norm(m);
                acc[1] += w2 * std::norm(r);
                acc[2] += w2 * 2.0 * (m * std::conj(r)).real();
            }
        }
        return acc;
    };

    // outer (eta, etat) grids: eta in (1, n), etat in (eta, min(2 eta, n))
    std::vector<double> an, aw;
    gl_grid(1.0, double(n), std::clamp(n / 2, 3, 10), an, aw);
    Eigen::VectorXd diffv(1);
    for (size_t ia = 0; ia < an.size(); ++ia) {
        const double a = an[ia];
        const double hi = std::min(2.0 * a, double(n));
        if (!(hi > a)) continue;
        std::vector<double> bn, bw;
        gl_grid(a, hi, 3, bn, bw);
        const double wa = aw[ia] * std::pow(a, 1.0 - 2.0 * h1p) * mollifier_sq_1d(mol, n, a);
        for (size_t ib = 0; ib < bn.size(); ++ib) {
            const double at = bn[ib];
            diffv[0] = a - at;
            const double psi = Phi.psi.ft(diffv);
            const double w2 = wa * bw[ib] * std::pow(at, 1.0 - 2.0 * h1p) *
                              mollifier_sq_1d(mol, n, at) * psi * psi;
            if (w2 == 0.0) continue;
            const auto v = inner4(a, at);
            out.j_m += w2 * v[0];
            out.j_r += w2 * v[1];
            out.j_mr += w2 * v[2];
        }
    }
    return out;
}

std::vector<ScanPoint> threshold_scan(int d, const std::vector<HurstVector>& grid,
                                      const ClassETestFunction& Phi, const PhiTransform& phi,
                                      std::pair<int, int> n_range, const MollifierSpec& mol,
                                      const McOptions& opts) {
    std::vector<ScanPoint> out;
    for (const HurstVector& H : grid) {
        ScanPoint pt;
        pt.H = H;
        try {
            pt.label = classify_regime(d, H);
            for (int n = n_range.first; n <= n_range.second; ++n) {
                auto est = divergence_functional(d, H, Phi, phi, n, mol, opts);
                pt.values.emplace_back(n, est.value);
            }
            const auto verdict = assess_divergence(pt.values);
            pt.empirical_divergent = verdict.divergent;
            pt.fit = verdict.fit;
            pt.agrees = (pt.label == RegimeLabel::IllPosed) == pt.empirical_divergent;
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace fracwave
