#pragma once

// Fixed quadrature node tables: 10-point Gauss-Legendre (for composite rules
// on oscillatory integrands) and the 15-point Gauss-Kronrod pair used by the
// adaptive integrator. Constants from standard references.

#include <array>
#include <cmath>

namespace fracwave::detail {

// 10-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 10> kGL10Nodes = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244,
    -0.4333953941292472, -0.1488743389816312,  0.1488743389816312,
     0.4333953941292472,  0.6794095682990244,  0.8650633666889845,
     0.9739065285171717};
inline constexpr std::array<double, 10> kGL10Weights = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820,
    0.2692667193099963, 0.2955242247147529, 0.2955242247147529,
    0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
    0.0666713443086881};

// Composite 10-point Gauss-Legendre of f over [a, b] with `panels` panels.
template <typename F>
auto gauss10_composite(F&& f, double a, double b, int panels) -> decltype(f(0.0) * 1.0) {
    using R = decltype(f(0.0) * 1.0);
    R acc{};
    const double w = (b - a) / panels;
    const double h = 0.5 * w;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * w;
        for (int j = 0; j < 10; ++j) acc += kGL10Weights[j] * f(c + h * kGL10Nodes[j]);
    }
    return acc * h;
}

// Panel count resolving phase frequency `omega` over a range of length L.
inline int panels_for_frequency(double omega, double L, int min_panels = 2, int max_panels = 1 << 20) {
    const double per = std::abs(omega) * L / (2.0 * M_PI); // oscillation periods
    int p = min_panels + int(per * 0.75);                  // ~13 GL10 points per period
    return p < max_panels ? p : max_panels;
}

// 15-point Kronrod nodes on [-1,1] (symmetric; only nonnegative stored) with
// Kronrod weights and the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.0000000000000000, 0.2077849550078985, 0.4058451513773972,
    0.5860872354676911, 0.7415311855993945, 0.8648644233597691,
    0.9491079123427585, 0.9914553711208126};
inline constexpr std::array<double, 8> kGK15WeightsK = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
    0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
    0.0630920926299786, 0.0229353220105292};
// 7-point Gauss weights aligned with odd Kronrod node indices (0,2,4,6).
inline constexpr std::array<double, 4> kGK15WeightsG = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

} // namespace fracwave::detail
