#include "fracwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "fracwave/detail/gauss.hpp"

namespace fracwave {

namespace {

struct Gk15Out {
    double value;
    double error;
};

// 15-point Kronrod with embedded 7-point Gauss error estimate on [a, b].
Gk15Out gk15(const std::function<double(double)>& f, double a, double b) {
    using namespace detail;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fk[15];
    fk[7] = f(c);
    for (int j = 1; j <= 7; ++j) {
        const double x = h * kGK15Nodes[j];
        fk[7 - j] = f(c - x);
        fk[7 + j] = f(c + x);
    }
    double vk = kGK15WeightsK[0] * fk[7];
    for (int j = 1; j <= 7; ++j) vk += kGK15WeightsK[j] * (fk[7 - j] + fk[7 + j]);
    double vg = kGK15WeightsG[0] * fk[7];
    for (int j = 1; j <= 3; ++j) vg += kGK15WeightsG[j] * (fk[7 - 2 * j] + fk[7 + 2 * j]);
    vk *= h;
    vg *= h;
    // QUADPACK-style rescaled error estimate
    double err = std::abs(vk - vg);
    err = std::min(err, std::pow(200.0 * err, 1.5) + 1e-300);
    return {vk, std::max(err, std::abs(vk) * 5e-16)};
}

struct Cell {
    double a, b, value, error;
    bool operator<(const Cell& o) const { return error < o.error; }
};

// Wrap f on a segment whose left/right endpoint carries an |x-e|^{-beta}
// singularity using x = e +- w u^gamma.
std::function<double(double)> graded_wrap(const std::function<double(double)>& f, double e,
                                          double w, double beta, bool left) {
    if (beta >= 1.0) throw DomainError("integrate_1d: endpoint exponent beta must be < 1");
    int gamma = std::clamp(int(std::ceil(2.5 / (1.0 - beta))), 2, 40);
    const double g = double(gamma);
    if (left)
        return [f, e, w, g](double u) {
            const double up = std::pow(u, g);
            return f(e + w * up) * g * w * (u > 0.0 ? up / u : 0.0);
        };
    return [f, e, w, g](double u) {
        const double up = std::pow(u, g);
        return f(e - w * up) * g * w * (u > 0.0 ? up / u : 0.0);
    };
}

QuadratureResult integrate_segments(const std::vector<std::function<double(double)>>& fs,
                                    const QuadratureOptions& opts) {
    struct ByError {
        bool operator()(const std::pair<Cell, int>& x, const std::pair<Cell, int>& y) const {
            return x.first < y.first;
        }
    };
    long evals = 0;
    std::priority_queue<std::pair<Cell, int>, std::vector<std::pair<Cell, int>>, ByError> heap;
    double total = 0.0, toterr = 0.0;
    for (int i = 0; i < int(fs.size()); ++i) {
        auto r = gk15(fs[i], 0.0, 1.0);
        evals += 15;
        total += r.value;
        toterr += r.error;
        heap.push({Cell{0.0, 1.0, r.value, r.error}, i});
    }
    while (toterr > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (evals + 30 > opts.max_evaluations)
            throw NonConvergence("integrate_1d: evaluation budget exhausted", total, toterr, evals);
        auto [cell, fi] = heap.top();
        heap.pop();
        const double m = 0.5 * (cell.a + cell.b);
        auto rl = gk15(fs[fi], cell.a, m);
        auto rr = gk15(fs[fi], m, cell.b);
        evals += 30;
        total += rl.value + rr.value - cell.value;
        toterr += rl.error + rr.error - cell.error;
        heap.push({Cell{cell.a, m, rl.value, rl.error}, fi});
        heap.push({Cell{m, cell.b, rr.value, rr.error}, fi});
        if (heap.size() > 200000)
            throw NonConvergence("integrate_1d: interval heap overflow", total, toterr, evals);
    }
    return {total, toterr, evals};
}

} // namespace

QuadratureResult integrate_1d(const std::function<double(double)>& f, const Interval& iv,
                              const QuadratureOptions& opts) {
    if (!(iv.b > iv.a)) throw DomainError("integrate_1d: empty interval");
    std::vector<double> cuts{iv.a};
    for (double c : iv.breakpoints)
        if (c > iv.a && c < iv.b) cuts.push_back(c);
    cuts.push_back(iv.b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Each raw segment becomes a unit-interval integrand; singular endpoints
    // of the whole interval get the graded substitution.
    std::vector<std::function<double(double)>> fs;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1], w = b - a;
        const bool sing_a = (k == 0 && iv.singular_beta_a != 0.0);
        const bool sing_b = (k + 2 == cuts.size() && iv.singular_beta_b != 0.0);
        if (sing_a && sing_b) {
            const double m = 0.5 * (a + b);
            fs.push_back(graded_wrap(f, a, m - a, iv.singular_beta_a, true));
            fs.push_back(graded_wrap(f, b, b - m, iv.singular_beta_b, false));
        } else if (sing_a) {
            fs.push_back(graded_wrap(f, a, w, iv.singular_beta_a, true));
        } else if (sing_b) {
            fs.push_back(graded_wrap(f, b, w, iv.singular_beta_b, false));
        } else {
            fs.push_back([&f, a, w](double u) { return f(a + w * u) * w; });
        }
    }
    return integrate_segments(fs, opts);
}

QuadratureResult integrate_tail_doubling(const std::function<double(double)>& f, const Interval& iv,
                                         const QuadratureOptions& opts, int max_doublings) {
    QuadratureResult acc = integrate_1d(f, iv, opts);
    double r = iv.b;
    for (int k = 0; k < max_doublings; ++k) {
        Interval tail{r, 2.0 * r};
        QuadratureOptions topts = opts;
        topts.abs_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(acc.value)) * 0.05;
        auto t = integrate_1d(f, tail, topts);
        acc.value += t.value;
        acc.abs_error_estimate += t.abs_error_estimate;
        acc.evaluations += t.evaluations;
        r *= 2.0;
        if (std::abs(t.value) < 0.1 * std::max(opts.abs_tol, opts.rel_tol * std::abs(acc.value)))
            return acc;
    }
    throw NonConvergence("integrate_tail_doubling: tail did not settle", acc.value,
                         acc.abs_error_estimate, acc.evaluations);
}

QuadratureResult integrate_2d_nested(const std::function<double(double, double)>& f,
                                     const Interval& outer,
                                     const std::function<Interval(double)>& inner_of,
                                     const QuadratureOptions& opts) {
    long inner_evals = 0;
    double inner_err_seen = 0.0;
    QuadratureOptions iopts;
    iopts.abs_tol = opts.abs_tol * 0.02;
    iopts.rel_tol = std::max(opts.rel_tol * 0.1, 1e-12);
    iopts.max_evaluations = opts.max_evaluations;
    auto outer_f = [&](double x) {
        const Interval iv = inner_of(x);
        if (!(iv.b > iv.a)) return 0.0;
        auto r = integrate_1d([&](double y) { return f(x, y); }, iv, iopts);
        inner_evals += r.evaluations;
        inner_err_seen = std::max(inner_err_seen, r.abs_error_estimate);
        return r.value;
    };
    auto out = integrate_1d(outer_f, outer, opts);
    out.evaluations += inner_evals;
    out.abs_error_estimate += inner_err_seen * (outer.b - outer.a);
    return out;
}

QuadratureResult adaptive_integrate(const std::function<double(const std::vector<double>&)>& f,
                                    const IntegrationDomain& domain,
                                    const QuadratureOptions& opts) {
    if (domain.boxes.empty()) throw DomainError("adaptive_integrate: empty domain");
    auto beta_of = [&](int axis) {
        for (size_t i = 0; i < domain.singular_axes.size(); ++i)
            if (domain.singular_axes[i] == axis)
                return domain.graded ? domain.singular_betas[i] : 0.0;
        return 0.0;
    };
    auto axis_interval = [&](const Box& box, int axis) {
        Interval iv{box.lo[axis], box.hi[axis]};
        const double beta = beta_of(axis);
        if (beta != 0.0) {
            // singular face only at coordinate value 0
            if (iv.a == 0.0) iv.singular_beta_a = beta;
            if (iv.b == 0.0) iv.singular_beta_b = beta;
            if (iv.a < 0.0 && iv.b > 0.0) iv.breakpoints.push_back(0.0);
        }
        return iv;
    };

    QuadratureResult total;
    QuadratureOptions bopts = opts;
    bopts.abs_tol = opts.abs_tol / double(domain.boxes.size());
    for (const Box& box : domain.boxes) {
        QuadratureResult r;
        if (domain.dim == 1) {
            Interval iv = axis_interval(box, 0);
            if (iv.a < 0.0 && iv.b > 0.0 && beta_of(0) != 0.0) {
                Interval neg = iv, pos = iv;
                neg.b = 0.0;
                neg.singular_beta_b = beta_of(0);
                pos.a = 0.0;
                pos.singular_beta_a = beta_of(0);
                neg.breakpoints.clear();
                pos.breakpoints.clear();
                auto r1 = integrate_1d([&](double x) { return f({x}); }, neg, bopts);
                auto r2 = integrate_1d([&](double x) { return f({x}); }, pos, bopts);
                r = {r1.value + r2.value, r1.abs_error_estimate + r2.abs_error_estimate,
                     r1.evaluations + r2.evaluations};
            } else {
                r = integrate_1d([&](double x) { return f({x}); }, iv, bopts);
            }
        } else if (domain.dim == 2) {
            Interval oiv = axis_interval(box, 0);
            Interval iiv = axis_interval(box, 1);
            r = integrate_2d_nested([&](double x, double y) { return f({x, y}); }, oiv,
                                    [iiv](double) { return iiv; }, bopts);
        } else {
            throw DomainError("adaptive_integrate: only dim 1 and 2 are supported");
        }
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.evaluations += r.evaluations;
    }
    return total;
}

GrowthFit growth_fit(const std::vector<std::pair<int, double>>& values) {
    if (values.size() < 3) throw DegenerateInput("growth_fit: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int nmin = values.front().first, nmax = values.front().first;
    for (auto [n, v] : values) {
        if (!(v > 0.0)) throw DegenerateInput("growth_fit: values must be positive");
        const double y = std::log2(v);
        sx += n;
        sy += y;
        sxx += double(n) * n;
        sxy += n * y;
        nmin = std::min(nmin, n);
        nmax = std::max(nmax, n);
    }
    const double m = double(values.size());
    const double det = m * sxx - sx * sx;
    if (det == 0.0) throw DegenerateInput("growth_fit: degenerate abscissae");
    GrowthFit fit;
    fit.slope = (m * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (auto [n, v] : values) {
        const double r = std::log2(v) - (fit.slope * n + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / m);
    fit.n_range = {nmin, nmax};
    return fit;
}

DivergenceVerdict assess_divergence(const std::vector<std::pair<int, double>>& values) {
    DivergenceVerdict v;
    v.fit = growth_fit(values);
    if (v.fit.slope > 0.05 && v.fit.residual < 0.1) {
        v.divergent = true;
        return v;
    }
    // marginal rule: last 4 successive differences positive and comparable
    if (values.size() >= 5) {
        std::vector<double> diffs;
        for (size_t i = values.size() - 4; i < values.size(); ++i)
            diffs.push_back(values[i].second - values[i - 1].second);
        double dmin = diffs[0], dmax = diffs[0];
        for (double d : diffs) {
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        const double scale = std::abs(values.back().second);
        if (dmin > 0.0 && dmin > 0.35 * dmax && dmax > 1e-3 * scale) {
            v.divergent = true;
            v.marginal = true;
        }
    }
    return v;
}

} // namespace fracwave
