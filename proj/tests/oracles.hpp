// Shared brute-force oracles and field builders for the unit tests.  The
// oracles are deliberately slow and dumb: O(N^2) DFT sums, pointwise loops,
// no FFT, no shared code paths with the library.

#pragma once

#include "hpe/fft.hpp"
#include "hpe/grid.hpp"
#include "hpe/hydro.hpp"
#include "hpe/rng.hpp"
#include "hpe/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Direct DFT: c(k) = (1/N) sum_x f(x) exp(-2 pi i k.x), same convention as
// hpe::to_spectral.
inline hpe::SpectralField brute_dft(const hpe::RealField& f) {
    const hpe::GridSpec& g = f.grid;
    hpe::SpectralField F(g, f.components);
    const double invn = g.cell_volume();
    for (int c = 0; c < f.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    std::complex<double> acc = 0.0;
                    for (int jx = 0; jx < g.nx; ++jx)
                        for (int jy = 0; jy < g.ny; ++jy)
                            for (int jz = 0; jz < g.nz; ++jz) {
                                double phase = -2.0 * pi *
                                               (double(ix) * jx / g.nx +
                                                double(iy) * jy / g.ny +
                                                double(iz) * jz / g.nz);
                                acc += f.at(c, jx, jy, jz) *
                                       std::complex<double>(std::cos(phase), std::sin(phase));
                            }
                    F.at(c, ix, iy, iz) = acc * invn;
                }
    return F;
}

// Gaussian field with Hermitian-paired coefficients on |k_i| <= band, no
// Nyquist content; optionally projected to the admissible set.
inline hpe::RealField random_field(const hpe::GridSpec& g, int ncomp, std::uint64_t seed,
                                   int band, bool admissible, double scale = 1.0) {
    hpe::SpectralField F(g, ncomp);
    std::uint64_t channel = 0;
    for (int kx = 0; kx <= band; ++kx)
        for (int ky = -band; ky <= band; ++ky)
            for (int kz = -band; kz <= band; ++kz) {
                if (kx == 0 && (ky < 0 || (ky == 0 && kz < 0))) continue;
                if (kx == 0 && ky == 0 && kz == 0) continue;
                if (2 * kx >= g.nx || 2 * std::abs(ky) >= g.ny || 2 * std::abs(kz) >= g.nz)
                    continue; // stay clear of Nyquist planes
                for (int c = 0; c < ncomp; ++c) {
                    double re = hpe::gaussian(seed, 0, channel++) * scale;
                    double im = hpe::gaussian(seed, 0, channel++) * scale;
                    F.mode(c, kx, ky, kz) = {re, im};
                    F.mode(c, -kx, -ky, -kz) = {re, -im};
                }
            }
    if (admissible) hpe::hydrostatic_project_spectral(F);
    return hpe::to_physical(F);
}

inline double max_abs_diff(const hpe::RealField& a, const hpe::RealField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

inline double l2sq(const hpe::RealField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return s * f.grid.cell_volume();
}

inline double l2sq_diff(const hpe::RealField& a, const hpe::RealField& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return s * a.grid.cell_volume();
}

// evaluate f(x) = expr over the grid
template <class Fn>
hpe::RealField fill(const hpe::GridSpec& g, int ncomp, Fn&& expr) {
    hpe::RealField f(g, ncomp);
    for (int c = 0; c < ncomp; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz)
                    f.at(c, ix, iy, iz) = expr(c, double(ix) / g.nx, double(iy) / g.ny,
                                               double(iz) / g.nz);
    return f;
}

} // namespace oracle
