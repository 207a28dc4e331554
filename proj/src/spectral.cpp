#include "hpe/spectral.hpp"

#include <cmath>
#include <numbers>

namespace hpe {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

int axis_size(const GridSpec& g, int axis) {
    switch (axis) {
        case 0: return g.nx;
        case 1: return g.ny;
        default: return g.nz;
    }
}
} // namespace

double laplacian_symbol(const GridSpec& g, int ix, int iy, int iz) {
    double kx = wavenumber(ix, g.nx);
    double ky = wavenumber(iy, g.ny);
    double kz = wavenumber(iz, g.nz);
    return two_pi * two_pi * (kx * kx + ky * ky + kz * kz);
}

SpectralField differentiate(const SpectralField& F, int axis) {
    assert(axis >= 0 && axis < 3);
    const auto& g = F.grid;
    const int n = axis_size(g, axis);
    SpectralField out(g, F.components);
    for (int c = 0; c < F.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    int i = (axis == 0) ? ix : (axis == 1) ? iy : iz;
                    int k = wavenumber(i, n);
                    if (2 * k == n) continue; // Nyquist
                    std::complex<double> mul(0.0, two_pi * k);
                    out.at(c, ix, iy, iz) = mul * F.at(c, ix, iy, iz);
                }
    return out;
}

SpectralField bessel_multiplier(const SpectralField& F, double s) {
    const auto& g = F.grid;
    SpectralField out(g, F.components);
    for (int c = 0; c < F.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    double w = std::pow(1.0 + laplacian_symbol(g, ix, iy, iz), 0.5 * s);
                    out.at(c, ix, iy, iz) = w * F.at(c, ix, iy, iz);
                }
    return out;
}

void dealias_in_place(SpectralField& F) {
    const auto& g = F.grid;
    for (int c = 0; c < F.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    int kx = wavenumber(ix, g.nx);
                    int ky = wavenumber(iy, g.ny);
                    int kz = wavenumber(iz, g.nz);
                    if (3 * std::abs(kx) > g.nx || 3 * std::abs(ky) > g.ny ||
                        3 * std::abs(kz) > g.nz)
                        F.at(c, ix, iy, iz) = 0.0;
                }
}

SpectralField dealias(const SpectralField& F) {
    SpectralField out = F;
    dealias_in_place(out);
    return out;
}

bool is_dealiased(const SpectralField& F, double tol) {
    const auto& g = F.grid;
    for (int c = 0; c < F.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz) {
                    int kx = wavenumber(ix, g.nx);
                    int ky = wavenumber(iy, g.ny);
                    int kz = wavenumber(iz, g.nz);
                    if ((3 * std::abs(kx) > g.nx || 3 * std::abs(ky) > g.ny ||
                         3 * std::abs(kz) > g.nz) &&
                        std::abs(F.at(c, ix, iy, iz)) > tol)
                        return false;
                }
    return true;
}

} // namespace hpe
