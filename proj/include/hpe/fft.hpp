// Forward/backward Fourier transforms between RealField and SpectralField.
//
// Conventions: f(x) = sum_k c(k) exp(2 pi i k.x), so the forward transform
// divides by nx*ny*nz and c(0) is the mean.  to_physical requires Hermitian
// symmetry c(-k) = conj(c(k)) and rejects inputs that violate it, since a
// silent real() cast would hide bugs upstream.

#pragma once

#include "hpe/grid.hpp"

namespace hpe {

SpectralField to_spectral(const RealField& f);
RealField to_physical(const SpectralField& F, double hermitian_tol = 1e-10);

// Max |c(-k) - conj(c(k))| over all modes and components.
double hermitian_defect(const SpectralField& F);

// L2(T^3) norm via Parseval (no transform needed on spectral input).
double l2_norm(const RealField& f);
double l2_norm(const SpectralField& F);

// Horizontal-torus counterparts for Field2.
struct SpectralField2 {
    int nx = 0;
    int ny = 0;
    int components = 0;
    std::vector<std::complex<double>> coeffs;

    SpectralField2() = default;
    SpectralField2(int nx_, int ny_, int ncomp) : nx(nx_), ny(ny_), components(ncomp) {
        coeffs.assign(std::size_t(nx) * ny * ncomp, {0.0, 0.0});
    }
    std::size_t index(int c, int ix, int iy) const {
        return (std::size_t(c) * nx + ix) * ny + iy;
    }
    std::complex<double>& at(int c, int ix, int iy) { return coeffs[index(c, ix, iy)]; }
    std::complex<double> at(int c, int ix, int iy) const { return coeffs[index(c, ix, iy)]; }
};

SpectralField2 to_spectral(const Field2& f);
Field2 to_physical(const SpectralField2& F, double hermitian_tol = 1e-10);
double l2_norm(const Field2& f);

} // namespace hpe
