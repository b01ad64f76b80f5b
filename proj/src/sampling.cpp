#include "fracwave/sampling.hpp"

namespace fracwave {

std::vector<WeightedPoint> importance_sample_mu(const HurstVector& H, int n, double truncation,
                                                long count, uint64_t seed,
                                                const MollifierSpec& mollifier, uint64_t stream) {
    if (count <= 0) throw DomainError("importance_sample_mu: count must be positive");
    H.validate();
    std::vector<PowerLawAxis> axes;
    axes.reserve(H.d + 1);
    for (int i = 0; i <= H.d; ++i) axes.emplace_back(H.h[i], truncation);
    double base_mass = 1.0;
    for (const auto& ax : axes) base_mass *= ax.mass();

    CounterRng rng(seed, stream);
    std::vector<WeightedPoint> out;
    out.reserve(count);
    const double base_w = base_mass / double(count);
    for (long j = 0; j < count; ++j) {
        WeightedPoint p;
        p.eta.resize(H.d);
        const uint64_t base = uint64_t(j) * (H.d + 1);
        p.xi = axes[0].sample(rng.uniform(base));
        for (int i = 0; i < H.d; ++i) p.eta[i] = axes[i + 1].sample(rng.uniform(base + 1 + i));
        double w = base_w;
        if (n >= 0) {
            const double m = mollifier_ft(mollifier, n, p.xi, p.eta);
            w *= m * m;
        }
        p.weight = w;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace fracwave
