#include "doctest.h"

#include "hpe/fft.hpp"
#include "hpe/hydro.hpp"
#include "hpe/spectral.hpp"
#include "oracles.hpp"

using namespace hpe;

namespace {

RealField add(const RealField& a, const RealField& b) {
    RealField out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

} // namespace

TEST_CASE("helmholtz split: gradient + divfree recovers the input") {
    Field2 f(16, 16, 2);
    for (int ix = 0; ix < 16; ++ix)
        for (int iy = 0; iy < 16; ++iy) {
            double x = ix / 16.0, y = iy / 16.0;
            f.at(0, ix, iy) = std::sin(2 * oracle::pi * (x + 2 * y));
            f.at(1, ix, iy) = std::cos(2 * oracle::pi * x) + 0.3;
        }
    HelmholtzParts parts = helmholtz_2d(f);
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(f.values[i] - parts.gradient.values[i] -
                                     parts.divfree.values[i]));
    CHECK(err < 1e-12);

    // the gradient part of a pure gradient is everything
    Field2 grad(16, 16, 2);
    for (int ix = 0; ix < 16; ++ix)
        for (int iy = 0; iy < 16; ++iy) {
            double x = ix / 16.0, y = iy / 16.0;
            // grad of psi = sin(2 pi x) cos(2 pi y)
            grad.at(0, ix, iy) = 2 * oracle::pi * std::cos(2 * oracle::pi * x) *
                                 std::cos(2 * oracle::pi * y);
            grad.at(1, ix, iy) = -2 * oracle::pi * std::sin(2 * oracle::pi * x) *
                                 std::sin(2 * oracle::pi * y);
        }
    HelmholtzParts p2 = helmholtz_2d(grad);
    double resid = 0.0;
    for (double v : p2.divfree.values) resid = std::max(resid, std::abs(v));
    CHECK(resid < 1e-10);

    // a perpendicular (stream-function) field is untouched
    Field2 divfree(16, 16, 2);
    for (int ix = 0; ix < 16; ++ix)
        for (int iy = 0; iy < 16; ++iy) {
            double x = ix / 16.0, y = iy / 16.0;
            divfree.at(0, ix, iy) = -std::sin(2 * oracle::pi * y);
            divfree.at(1, ix, iy) = std::sin(2 * oracle::pi * x);
        }
    HelmholtzParts p3 = helmholtz_2d(divfree);
    double gpart = 0.0;
    for (double v : p3.gradient.values) gpart = std::max(gpart, std::abs(v));
    CHECK(gpart < 1e-12);
}

TEST_CASE("projection algebra: P idempotent, P Q = 0, P + Q = Id") {
    GridSpec g{16, 16, 16};
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        RealField v = oracle::random_field(g, 2, seed, 4, false);
        RealField pv = hydrostatic_project(v);
        RealField qv = hydrostatic_q(v);

        CHECK(oracle::max_abs_diff(v, add(pv, qv)) < 1e-11);
        CHECK(oracle::max_abs_diff(hydrostatic_project(pv), pv) < 1e-11);

        RealField pqv = hydrostatic_project(qv);
        CHECK(std::sqrt(oracle::l2sq(pqv)) < 1e-12);
        CHECK(barotropic_divergence(pv) < 1e-11);

        // spectral projection agrees with the physical one
        SpectralField V = to_spectral(v);
        hydrostatic_project_spectral(V);
        CHECK(oracle::max_abs_diff(to_physical(V), pv) < 1e-11);
    }
}

TEST_CASE("Q is constant in z and a pure horizontal gradient") {
    GridSpec g{8, 8, 8};
    RealField v = oracle::random_field(g, 2, 9, 2, false);
    RealField qv = hydrostatic_q(v);
    for (int c = 0; c < 2; ++c)
        for (int ix = 0; ix < 8; ++ix)
            for (int iy = 0; iy < 8; ++iy)
                for (int iz = 0; iz < 8; ++iz)
                    CHECK(qv.at(c, ix, iy, iz) == doctest::Approx(qv.at(c, ix, iy, 0)));

    // curl of the z-average vanishes: d_x q_y - d_y q_x = 0
    SpectralField Q = to_spectral(qv);
    SpectralField qx_y = differentiate(Q, 1); // d_y of both components
    SpectralField qy_x = differentiate(Q, 0);
    const std::size_t n = std::size_t(g.points());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(qy_x.coeffs[n + i] - qx_y.coeffs[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("vertical average and barotropic split") {
    GridSpec g{8, 8, 12};
    RealField v = oracle::fill(g, 2, [](int c, double x, double, double z) {
        double base = std::sin(2 * oracle::pi * x);
        double fluct = std::cos(2 * oracle::pi * z);
        return c == 0 ? base + fluct : 2.0 * base * fluct;
    });
    BarotropicSplit split = barotropic_split(v);
    // mean over z of cos(2 pi z) is 0 on the grid
    for (int ix = 0; ix < 8; ++ix)
        for (int iy = 0; iy < 8; ++iy) {
            double x = ix / 8.0;
            CHECK(split.vbar.at(0, ix, iy) ==
                  doctest::Approx(std::sin(2 * oracle::pi * x)).epsilon(1e-12));
            CHECK(std::abs(split.vbar.at(1, ix, iy)) < 1e-13);
        }
    // vtilde has zero vertical average
    Field2 resid = vertical_average(split.vtilde);
    for (double r : resid.values) CHECK(std::abs(r) < 1e-13);
}

TEST_CASE("vertical velocity closed form") {
    GridSpec g{16, 16, 16};
    RealField v = oracle::fill(g, 2, [](int c, double x, double, double z) {
        if (c != 0) return 0.0;
        return std::sin(2 * oracle::pi * x) * std::cos(2 * oracle::pi * z);
    });
    RealField w = vertical_velocity(v);
    RealField expect = oracle::fill(g, 1, [](int, double x, double, double z) {
        return -std::cos(2 * oracle::pi * x) * std::sin(2 * oracle::pi * z);
    });
    CHECK(oracle::max_abs_diff(w, expect) < 1e-12);
    CHECK(std::abs(w.at(0, 3, 5, 0)) < 1e-13); // w(z = 0) = 0
}

TEST_CASE("vertical velocity satisfies dz w = -div_xy v spectrally") {
    GridSpec g{16, 16, 16};
    RealField v = oracle::random_field(g, 2, 33, 4, true);
    RealField w = vertical_velocity(v);

    SpectralField W = to_spectral(w);
    SpectralField V = to_spectral(v);
    SpectralField dzw = differentiate(W, 2);
    SpectralField dxvx = differentiate(V, 0);
    SpectralField dyvy = differentiate(V, 1);
    const std::size_t n = std::size_t(g.points());
    double resid2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        resid2 += std::norm(dzw.coeffs[i] + dxvx.coeffs[i] + dyvy.coeffs[n + i]);
    CHECK(std::sqrt(resid2) < 1e-10);
}

TEST_CASE("vertical velocity rejects inadmissible input") {
    GridSpec g{8, 8, 8};
    // z-independent field with nonzero divergence
    RealField v = oracle::fill(g, 2, [](int c, double x, double, double) {
        return c == 0 ? std::sin(2 * oracle::pi * x) : 0.0;
    });
    CHECK(barotropic_divergence(v) > 1.0);
    CHECK_THROWS_AS(vertical_velocity(v), std::invalid_argument);
    CHECK_NOTHROW(vertical_velocity(hydrostatic_project(v)));
}

TEST_CASE("vertical antiderivative integrates cos(2 pi z) and vanishes at z = 0") {
    GridSpec g{8, 8, 16};
    RealField f = oracle::fill(g, 1, [](int, double, double, double z) {
        return std::cos(2 * oracle::pi * z);
    });
    RealField F = vertical_antiderivative(f);
    RealField expect = oracle::fill(g, 1, [](int, double, double, double z) {
        return std::sin(2 * oracle::pi * z) / (2 * oracle::pi);
    });
    CHECK(oracle::max_abs_diff(F, expect) < 1e-13);
}

TEST_CASE("pressure recovery: gradients are curl-free and track the ensemble") {
    GridSpec g{8, 8, 8};
    RealField v = oracle::random_field(g, 2, 77, 2, true);
    NoiseEnsemble e = build_kraichnan(2, 4.0 / 3.0, 2);
    RealField drift(g, 2);
    PressureGradients pg = recover_pressures(v, e, drift);
    CHECK(pg.grad_ptilde.size() == e.modes.size());

    for (const auto& gp : pg.grad_ptilde) {
        SpectralField2 G = to_spectral(gp);
        // curl in 2d: d_x g_y - d_y g_x = 0 for a gradient
        double worst = 0.0;
        for (int ix = 0; ix < 8; ++ix)
            for (int iy = 0; iy < 8; ++iy) {
                int kx = wavenumber(ix, 8), ky = wavenumber(iy, 8);
                if (2 * std::abs(kx) == 8 || 2 * std::abs(ky) == 8) continue;
                auto gx = G.at(0, ix, iy), gy = G.at(1, ix, iy);
                worst = std::max(worst,
                                 std::abs(std::complex<double>(0, kx) * gy -
                                          std::complex<double>(0, ky) * gx));
            }
        CHECK(worst < 1e-12);
    }
}
