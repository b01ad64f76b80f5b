#include <doctest.h>

#include <cmath>
#include <complex>

#include "fracwave/duhamel.hpp"
#include "fracwave/phase.hpp"
#include "fracwave/rng.hpp"
#include "oracle.hpp"

using namespace fracwave;

namespace {
cplx duhamel_oracle(double n, double s, double xi, double a, double tol = 1e-12) {
    return oracle::integrate(
        [&](double r) {
            const double g = a > n ? 0.0 : (a == 0.0 ? r : std::sin(r * a) / a);
            return std::exp(cplx(0.0, -xi * r)) * g;
        },
        0.0, s, tol);
}
} // namespace

TEST_CASE("phase integral closed form") {
    CHECK(phase_integral(0.0, 1.3) == cplx(1.3, 0.0));
    const cplx v = phase_integral(M_PI, 1.0);
    CHECK(std::abs(v - cplx(0.0, 2.0 / M_PI)) < 1e-15);

    // near-resonance stability against the quadrature oracle
    const cplx w = phase_integral(1e-9, 2.0);
    const cplx ref = oracle::integrate(
        [](double r) { return std::exp(cplx(0.0, 1e-9 * r)); }, 0.0, 2.0, 1e-14);
    CHECK(std::abs(w - ref) < 1e-12);
}

TEST_CASE("oscillatory moment integrals match the oracle") {
    CounterRng rng(7, 1);
    for (int trial = 0; trial < 60; ++trial) {
        const double z = (rng.uniform(3 * trial) - 0.5) * 40.0;
        const double s = 0.1 + 2.0 * rng.uniform(3 * trial + 1);
        const int k = int(rng.uniform(3 * trial + 2) * 6);
        const cplx got = om(k, z, s);
        const cplx ref = oracle::integrate(
            [&](double r) { return std::pow(r, k) * std::exp(cplx(0.0, z * r)); }, 0.0, s, 1e-13);
        CHECK(std::abs(got - ref) < 1e-11 * (1.0 + std::abs(ref)));

        const cplx qgot = omc_q(k, z, s);
        const cplx qref = oracle::integrate(
            [&](double r) { return std::pow(s - r, k) * std::exp(cplx(0.0, z * r)); }, 0.0, s,
            1e-13);
        CHECK(std::abs(qgot - qref) < 1e-11 * (1.0 + std::abs(qref)));
    }
    // tiny |z s|: series branch
    CHECK(std::abs(om(2, 1e-12, 1.5) - cplx(1.125, 0.0)) < 1e-14);
}

TEST_CASE("wave kernel transform") {
    Eigen::VectorXd unused(1);
    CHECK(wave_kernel_ft(M_PI, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wave_kernel_ft(2.5, 0.0) == doctest::Approx(2.5));
    CHECK(wave_kernel_ft(1.0, 3.0, 2.0) == 0.0);
    // |F(G_t)(eta)| <= min(t, 1/|eta|)
    CounterRng rng(11, 0);
    for (int i = 0; i < 200; ++i) {
        const double t = 3.0 * rng.uniform(2 * i);
        const double a = 20.0 * rng.uniform(2 * i + 1);
        const double v = std::abs(wave_kernel_ft(t, a));
        CHECK(v <= std::min(t, a > 0 ? 1.0 / a : t) + 1e-12);
    }
    // sinc-limit branch continuity
    CHECK(wave_kernel_ft(1.0, 1e-3) == doctest::Approx(std::sin(1e-3) / 1e-3).epsilon(1e-12));
}

TEST_CASE("duhamel closed form: fixed values") {
    CHECK(duhamel({}, 0.0, 3.0, 2.0) == cplx(0.0, 0.0));
    const cplx v = duhamel({}, M_PI, 0.0, 1.0);
    CHECK(std::abs(v - cplx(2.0, 0.0)) < 1e-13); // \int_0^pi sin = 2
    // exact resonance xi = a = 1
    const cplx r = duhamel({}, 1.0, 1.0, 1.0);
    CHECK(std::abs(r - duhamel_oracle(1e9, 1.0, 1.0, 1.0)) < 1e-10);
}

TEST_CASE("duhamel evaluator invariants") {
    DuhamelEvaluator ev(3);
    CHECK(ev(0.0, 0.7, 1.1) == cplx(0.0, 0.0));
    CHECK(ev(1.0, 0.7, 3.5) == cplx(0.0, 0.0)); // outside the truncation ball
    CHECK(ev.kernel_ft(1.0, 3.5) == 0.0);
    // sine-kernel bound |D| <= s^2/2
    CounterRng rng(13, 0);
    for (int i = 0; i < 200; ++i) {
        const double s = 2.0 * rng.uniform(3 * i);
        const double xi = 40.0 * (rng.uniform(3 * i + 1) - 0.5);
        const double a = 3.0 * rng.uniform(3 * i + 2);
        CHECK(std::abs(ev(s, xi, a)) <= 0.5 * s * s + 1e-12);
    }
}

TEST_CASE("duhamel conjugation symmetry") {
    CounterRng rng(17, 0);
    for (int i = 0; i < 300; ++i) {
        const double s = 2.5 * rng.uniform(3 * i) + 0.01;
        const double xi = 60.0 * (rng.uniform(3 * i + 1) - 0.5);
        const double a = 8.0 * rng.uniform(3 * i + 2);
        const cplx d1 = duhamel({}, s, -xi, a);
        const cplx d2 = std::conj(duhamel({}, s, xi, a));
        CHECK(std::abs(d1 - d2) <= 1e-14 * (1.0 + std::abs(d2)));
    }
}

TEST_CASE("duhamel closed form vs quadrature on random points with resonances") {
    CounterRng rng(19, 0);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const double s = 0.05 + 1.95 * rng.uniform(4 * i);
        double a = 6.0 * rng.uniform(4 * i + 1);
        double xi;
        const double sel = rng.uniform(4 * i + 2);
        if (sel < 0.2) {
            xi = a + (rng.uniform(4 * i + 3) - 0.5) * 2e-6; // |xi| ~ |eta| within 1e-6
        } else if (sel < 0.3) {
            xi = -a + (rng.uniform(4 * i + 3) - 0.5) * 2e-6;
        } else if (sel < 0.4) {
            a = 1e-4 * rng.uniform(4 * i + 3); // near the eta = 0 branch
            xi = 10.0 * (sel - 0.35);
        } else {
            xi = 30.0 * (rng.uniform(4 * i + 3) - 0.5);
        }
        const cplx got = duhamel({}, s, xi, a);
        const cplx ref = duhamel_oracle(1e9, s, xi, a, 1e-13);
        const double denom = std::max(std::abs(ref), 1e-6);
        CHECK(std::abs(got - ref) / denom < 1e-9);
        ++checked;
    }
    CHECK(checked == 1000);
}
