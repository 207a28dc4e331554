// Uniform periodic grids on the unit torus and the flat field containers
// used everywhere else.  A RealField is a set of real components sampled at
// grid nodes x_i = i/n; a SpectralField holds the matching Fourier
// coefficients in FFT index order.  Storage is component-major with z
// fastest, which is also the on-disk snapshot order.

#pragma once

#include <cassert>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hpe {

struct GridSpec {
    int nx = 0;
    int ny = 0;
    int nz = 0;

    // All axes must be even and >= 4 so that +-k pairs and the Nyquist
    // plane are well defined.
    void validate() const {
        for (int n : {nx, ny, nz}) {
            if (n < 4 || n % 2 != 0)
                throw std::invalid_argument("GridSpec: axis sizes must be even and >= 4");
        }
    }

    std::int64_t points() const { return std::int64_t(nx) * ny * nz; }
    double cell_volume() const { return 1.0 / double(points()); }

    bool operator==(const GridSpec&) const = default;
};

// Signed wavenumber for FFT bin i on an axis of size n: 0..n/2, then negative.
inline int wavenumber(int i, int n) { return (i <= n / 2) ? i : i - n; }

// FFT bin for a signed wavenumber k in {-n/2+1, .., n/2}.
inline int wave_index(int k, int n) { return (k >= 0) ? k : k + n; }

struct RealField {
    GridSpec grid;
    int components = 0;
    std::vector<double> values;

    RealField() = default;
    RealField(const GridSpec& g, int ncomp) : grid(g), components(ncomp) {
        grid.validate();
        assert(ncomp >= 1);
        values.assign(std::size_t(g.points()) * ncomp, 0.0);
    }

    std::size_t index(int c, int ix, int iy, int iz) const {
        return ((std::size_t(c) * grid.nx + ix) * grid.ny + iy) * grid.nz + iz;
    }
    double& at(int c, int ix, int iy, int iz) { return values[index(c, ix, iy, iz)]; }
    double at(int c, int ix, int iy, int iz) const { return values[index(c, ix, iy, iz)]; }

    // Pointer to one component's contiguous block of grid.points() doubles.
    double* component(int c) { return values.data() + std::size_t(c) * grid.points(); }
    const double* component(int c) const { return values.data() + std::size_t(c) * grid.points(); }
};

struct SpectralField {
    GridSpec grid;
    int components = 0;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    SpectralField(const GridSpec& g, int ncomp) : grid(g), components(ncomp) {
        grid.validate();
        assert(ncomp >= 1);
        coeffs.assign(std::size_t(g.points()) * ncomp, {0.0, 0.0});
    }

    std::size_t index(int c, int ix, int iy, int iz) const {
        return ((std::size_t(c) * grid.nx + ix) * grid.ny + iy) * grid.nz + iz;
    }
    std::complex<double>& at(int c, int ix, int iy, int iz) {
        return coeffs[index(c, ix, iy, iz)];
    }
    std::complex<double> at(int c, int ix, int iy, int iz) const {
        return coeffs[index(c, ix, iy, iz)];
    }
    // Coefficient for signed wavenumber (kx,ky,kz).
    std::complex<double>& mode(int c, int kx, int ky, int kz) {
        return at(c, wave_index(kx, grid.nx), wave_index(ky, grid.ny), wave_index(kz, grid.nz));
    }
    std::complex<double> mode(int c, int kx, int ky, int kz) const {
        return at(c, wave_index(kx, grid.nx), wave_index(ky, grid.ny), wave_index(kz, grid.nz));
    }

    std::complex<double>* component(int c) { return coeffs.data() + std::size_t(c) * grid.points(); }
    const std::complex<double>* component(int c) const {
        return coeffs.data() + std::size_t(c) * grid.points();
    }
};

// Fields on the horizontal torus T^2 (vertical averages, surface pressures).
struct Field2 {
    int nx = 0;
    int ny = 0;
    int components = 0;
    std::vector<double> values;

    Field2() = default;
    Field2(int nx_, int ny_, int ncomp) : nx(nx_), ny(ny_), components(ncomp) {
        assert(nx >= 4 && ny >= 4 && nx % 2 == 0 && ny % 2 == 0);
        values.assign(std::size_t(nx) * ny * ncomp, 0.0);
    }

    std::size_t index(int c, int ix, int iy) const {
        return (std::size_t(c) * nx + ix) * ny + iy;
    }
    double& at(int c, int ix, int iy) { return values[index(c, ix, iy)]; }
    double at(int c, int ix, int iy) const { return values[index(c, ix, iy)]; }
};

} // namespace hpe
