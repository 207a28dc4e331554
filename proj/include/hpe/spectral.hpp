// Diagonal spectral-space operators: partial derivatives, Bessel potentials
// (1-Lap)^(s/2), and the 2/3-rule dealiasing mask.
//
// Differentiation zeroes the Nyquist plane of its axis: the n/2 mode has no
// sign-definite imaginary partner on an even grid, and keeping it breaks
// conjugate symmetry of i*k multipliers.

#pragma once

#include "hpe/grid.hpp"

namespace hpe {

SpectralField differentiate(const SpectralField& F, int axis);
SpectralField bessel_multiplier(const SpectralField& F, double s);

// Zero every coefficient with 3*|k_axis| > n_axis on some axis (2/3 rule).
SpectralField dealias(const SpectralField& F);
void dealias_in_place(SpectralField& F);

bool is_dealiased(const SpectralField& F, double tol = 0.0);

// 4 pi^2 |k|^2, the symbol of -Laplacian.
double laplacian_symbol(const GridSpec& g, int ix, int iy, int iz);

} // namespace hpe
