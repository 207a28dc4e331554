#include "doctest.h"

#include "hpe/dynamics.hpp"
#include "hpe/fft.hpp"
#include "hpe/noise.hpp"
#include "hpe/spectral.hpp"
#include "oracles.hpp"

#include <set>
#include <sstream>

using namespace hpe;

TEST_CASE("mode count: d = 2, kmax = 2 has 12 modes") {
    // representatives of +-k pairs with 0 < |k| <= 2, kz = 0:
    // (1,0) (0,1) (1,1) (1,-1) (2,0) (0,2) -> 6 pairs x {cos,sin} = 12
    NoiseEnsemble e = build_kraichnan(2, 4.0 / 3.0, 2);
    CHECK(e.modes.size() == 12);
    CHECK(e.d == 2);
    CHECK(e.kmax == 2);
}

TEST_CASE("lattice enumeration matches a brute-force oracle") {
    for (int d : {2, 3}) {
        const int kmax = 3;
        NoiseEnsemble e = build_kraichnan(d, 1.0, kmax);
        // oracle count: lattice points with 0 < |k|^2 <= kmax^2 (kz = 0 when
        // d = 2), halved for +-k pairing, times (d-1) directions and 2
        // parities.
        int pairs = 0;
        for (int kx = -kmax; kx <= kmax; ++kx)
            for (int ky = -kmax; ky <= kmax; ++ky)
                for (int kz = -kmax; kz <= kmax; ++kz) {
                    if (d == 2 && kz != 0) continue;
                    int k2 = kx * kx + ky * ky + kz * kz;
                    if (k2 == 0 || k2 > kmax * kmax) continue;
                    ++pairs;
                }
        CHECK(e.modes.size() == std::size_t(pairs / 2 * (d - 1) * 2));

        // no representative duplicates its negation
        std::set<std::array<int, 3>> seen;
        for (const auto& m : e.modes) seen.insert(m.k);
        for (const auto& k : seen)
            CHECK(seen.count({-k[0], -k[1], -k[2]}) == 0);
    }
}

TEST_CASE("amplitudes follow |k|^{-(d+alpha)/2} exactly") {
    for (int d : {2, 3}) {
        const double alpha = 4.0 / 3.0;
        NoiseEnsemble e = build_kraichnan(d, alpha, 4);
        for (const auto& m : e.modes) {
            double k = std::sqrt(double(m.k[0] * m.k[0] + m.k[1] * m.k[1] + m.k[2] * m.k[2]));
            CHECK(m.amplitude == doctest::Approx(std::pow(k, -(d + alpha) / 2.0)).epsilon(1e-14));
        }
    }
}

TEST_CASE("directions are unit, orthogonal to k, and mutually orthogonal") {
    for (int d : {2, 3}) {
        NoiseEnsemble e = build_kraichnan(d, 1.5, 3);
        for (const auto& m : e.modes) {
            double dotk = m.direction[0] * m.k[0] + m.direction[1] * m.k[1] +
                          m.direction[2] * m.k[2];
            CHECK(std::abs(dotk) < 1e-15);
            double len2 = m.direction[0] * m.direction[0] +
                          m.direction[1] * m.direction[1] +
                          m.direction[2] * m.direction[2];
            CHECK(len2 == doctest::Approx(1.0).epsilon(1e-14));
        }
        if (d == 3) {
            // the two directions of the same (k, parity) are orthogonal
            for (std::size_t i = 0; i + 1 < e.modes.size(); ++i) {
                const auto& a = e.modes[i];
                const auto& b = e.modes[i + 1];
                if (a.k != b.k || a.parity != b.parity || a.ell != 1 || b.ell != 2) continue;
                double dot = a.direction[0] * b.direction[0] +
                             a.direction[1] * b.direction[1] +
                             a.direction[2] * b.direction[2];
                CHECK(std::abs(dot) < 1e-15);
            }
        }
    }
}

TEST_CASE("evaluated modes are divergence free") {
    GridSpec g{16, 16, 16};
    NoiseEnsemble e = build_kraichnan(3, 4.0 / 3.0, 2);
    auto fields = evaluate_modes(e, g);
    REQUIRE(!fields.empty());
    for (const auto& f : fields) {
        REQUIRE(f.components == 3);
        SpectralField F = to_spectral(f);
        SpectralField div = differentiate(F, 0);
        // div = sum_axis d_axis f_axis; build component-wise
        SpectralField dy = differentiate(F, 1);
        SpectralField dz = differentiate(F, 2);
        double worst = 0.0;
        const std::size_t n = std::size_t(g.points());
        for (std::size_t i = 0; i < n; ++i) {
            auto val = div.coeffs[i] + dy.coeffs[n + i] + dz.coeffs[2 * n + i];
            worst = std::max(worst, std::abs(val));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("lifting a horizontal ensemble is idempotent and zero-padded") {
    NoiseEnsemble e = build_kraichnan(2, 1.0, 2);
    NoiseEnsemble lifted = lift_horizontal(e);
    CHECK(lifted.vertical_lift);
    CHECK(lifted.modes.size() == e.modes.size());
    NoiseEnsemble twice = lift_horizontal(lifted);
    CHECK(twice.modes.size() == lifted.modes.size());

    GridSpec g{8, 8, 8};
    auto fields = evaluate_modes(lifted, g);
    for (const auto& f : fields) {
        REQUIRE(f.components == 3);
        // z-independent and zero vertical component
        for (int ix = 0; ix < 8; ++ix)
            for (int iy = 0; iy < 8; ++iy)
                for (int iz = 0; iz < 8; ++iz) {
                    CHECK(f.at(2, ix, iy, iz) == 0.0);
                    CHECK(f.at(0, ix, iy, iz) == f.at(0, ix, iy, 0));
                }
    }
}

TEST_CASE("sigma outer sum is x-independent for full shells") {
    // cos^2 + sin^2 = 1 pairs each +-k representative with both parities,
    // so the sum of sigma sigma^T is a constant matrix.
    GridSpec g{8, 8, 8};
    for (int d : {2, 3}) {
        NoiseEnsemble e = build_kraichnan(d, 4.0 / 3.0, 2);
        MatrixField s = sigma_outer_sum(e, g);
        for (int entry = 0; entry < 6; ++entry) {
            double lo = 1e300, hi = -1e300;
            const std::size_t n = std::size_t(g.points());
            for (std::size_t i = 0; i < n; ++i) {
                lo = std::min(lo, s.m[6 * i + entry]);
                hi = std::max(hi, s.m[6 * i + entry]);
            }
            CHECK(hi - lo < 1e-13);
        }
    }
}

TEST_CASE("parabolicity margin of the stratonovich coefficients is exactly 1/2") {
    GridSpec g{8, 8, 8};
    for (int d : {2, 3})
        for (int kmax : {1, 2, 4}) {
            NoiseEnsemble e = build_kraichnan(d, 4.0 / 3.0, kmax);
            DriftCoeffs c = stratonovich_drift_coeffs(e, g);
            CHECK(std::abs(parabolicity_margin(e, c.a) - 0.5) < 1e-12);
            CHECK(c.nu0 > 0.5 - 1e-12); // a >= (1/2) Id
        }
}

TEST_CASE("regularity dichotomy: log-divergent H^{alpha/2}, convergent C^gamma") {
    const double alpha = 4.0 / 3.0;
    RegularityReport rep = regularity_report(2, alpha, {8, 16, 32, 64}, 0.5);
    // h_partial grows ~ c log K
    CHECK(rep.h_slope > 0.0);
    CHECK(rep.h_r2 > 0.99);
    // gamma = 0.5 < alpha/2 = 2/3: partial sums converge, increments decay
    REQUIRE(rep.c_tail_ratios.size() >= 2);
    for (double r : rep.c_tail_ratios) CHECK(r < 0.9);
    // monotone partial sums
    for (std::size_t i = 1; i < rep.c_gamma_partial.size(); ++i)
        CHECK(rep.c_gamma_partial[i] >= rep.c_gamma_partial[i - 1]);
}

TEST_CASE("spectrum slope recovers -(1 + alpha)") {
    NoiseEnsemble e = build_kraichnan(2, 4.0 / 3.0, 32);
    SpectrumReport sr = spectrum_slope(e);
    CHECK(std::abs(sr.slope - (-(1.0 + 4.0 / 3.0))) < 0.4);
    // per-mode amplitude fit is exact for an exact power law
    CHECK(sr.amplitude_slope == doctest::Approx(-(2.0 + 4.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK_THROWS(spectrum_slope(build_kraichnan(2, 1.0, 4))); // needs kmax >= 8
}

TEST_CASE("ensemble file roundtrip is exact") {
    NoiseEnsemble e = build_kraichnan(3, 1.25, 3);
    std::ostringstream out;
    save_ensemble(out, e);
    std::istringstream in(out.str());
    NoiseEnsemble r = load_ensemble(in);
    CHECK(r.d == e.d);
    CHECK(r.alpha == e.alpha);
    CHECK(r.kmax == e.kmax);
    REQUIRE(r.modes.size() == e.modes.size());
    for (std::size_t i = 0; i < e.modes.size(); ++i) {
        CHECK(r.modes[i].k == e.modes[i].k);
        CHECK(r.modes[i].ell == e.modes[i].ell);
        CHECK(r.modes[i].parity == e.modes[i].parity);
        CHECK(r.modes[i].amplitude == e.modes[i].amplitude);
        CHECK(r.modes[i].direction == e.modes[i].direction);
    }
}

TEST_CASE("loader rejects malformed ensembles") {
    std::istringstream bad1("# vortex d=2 alpha=1 kmax=2\n");
    CHECK_THROWS(load_ensemble(bad1));
    std::istringstream bad2("# kraichnan d=2 alpha=1 kmax=2\n1 0 0 1 diagonal 0.5 0 1 0\n");
    CHECK_THROWS(load_ensemble(bad2));
}

TEST_CASE("build_kraichnan validates its inputs") {
    CHECK_THROWS(build_kraichnan(4, 1.0, 2));
    CHECK_THROWS(build_kraichnan(2, 0.0, 2));
    CHECK_THROWS(build_kraichnan(2, 2.5, 2));
    CHECK_THROWS(build_kraichnan(2, 1.0, 0));
}

TEST_CASE("line fit recovers an exact affine law") {
    LineFit f = fit_line({1, 2, 3, 4}, {3.5, 5.5, 7.5, 9.5});
    CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
}
