#include "doctest.h"

#include "hpe/fft.hpp"
#include "oracles.hpp"

using namespace hpe;

TEST_CASE("forward transform matches the brute-force DFT") {
    GridSpec g{4, 6, 8};
    RealField f = oracle::fill(g, 2, [](int c, double x, double y, double z) {
        double v = std::sin(2 * oracle::pi * x) + 0.5 * std::cos(2 * oracle::pi * (y + 2 * z));
        return c == 0 ? v : v * v - 0.3;
    });
    SpectralField fast = to_spectral(f);
    SpectralField slow = oracle::brute_dft(f);
    double err = 0.0;
    for (std::size_t i = 0; i < fast.coeffs.size(); ++i)
        err = std::max(err, std::abs(fast.coeffs[i] - slow.coeffs[i]));
    CHECK(err < 1e-13);
}

TEST_CASE("mean lands in the zero mode") {
    GridSpec g{4, 4, 4};
    RealField f(g, 1);
    for (auto& v : f.values) v = 2.5;
    SpectralField F = to_spectral(f);
    CHECK(std::abs(F.mode(0, 0, 0, 0) - 2.5) < 1e-14);
    double rest = 0.0;
    for (std::size_t i = 1; i < F.coeffs.size(); ++i) rest += std::abs(F.coeffs[i]);
    CHECK(rest < 1e-12);
}

TEST_CASE("roundtrip is the identity") {
    GridSpec g{8, 8, 8};
    RealField f = oracle::random_field(g, 3, 11, 3, false);
    RealField back = to_physical(to_spectral(f));
    CHECK(oracle::max_abs_diff(f, back) < 1e-13);
}

TEST_CASE("parseval ties the physical and spectral norms") {
    GridSpec g{8, 6, 4};
    RealField f = oracle::random_field(g, 2, 3, 2, false);
    SpectralField F = to_spectral(f);
    CHECK(l2_norm(f) == doctest::Approx(l2_norm(F)).epsilon(1e-13));
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(oracle::l2sq(f))).epsilon(1e-13));
}

TEST_CASE("to_physical rejects a non-Hermitian field") {
    GridSpec g{4, 4, 4};
    SpectralField F(g, 1);
    F.mode(0, 1, 0, 0) = {0.0, 1.0}; // no conjugate partner
    CHECK_THROWS_AS(to_physical(F), std::invalid_argument);
    CHECK(hermitian_defect(F) > 0.1);
}

TEST_CASE("2d transforms mirror the 3d conventions") {
    Field2 f(8, 6, 1);
    for (int ix = 0; ix < 8; ++ix)
        for (int iy = 0; iy < 6; ++iy)
            f.at(0, ix, iy) = std::cos(2 * oracle::pi * ix / 8.0) + 1.0;
    SpectralField2 F = to_spectral(f);
    CHECK(std::abs(F.at(0, 0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(F.at(0, 1, 0) - 0.5) < 1e-14);
    Field2 back = to_physical(F);
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(f.values[i] - back.values[i]));
    CHECK(err < 1e-13);
}
