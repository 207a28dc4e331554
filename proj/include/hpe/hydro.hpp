// Hydrostatic kinematics: the Helmholtz split of horizontal vector fields,
// the projection P that removes the gradient part of the barotropic mode,
// the diagnostic vertical velocity w(v) = -int_0^z div_xy v dz', and the
// pressure gradients recovered from a noise ensemble.
//
// "Admissible" always means: the vertical average of v is divergence free.

#pragma once

#include "hpe/fft.hpp"
#include "hpe/grid.hpp"
#include "hpe/noise.hpp"

#include <vector>

namespace hpe {

struct HelmholtzParts {
    Field2 gradient; // curl-free part, zero mean
    Field2 divfree;  // complement
};

// f must have 2 components.
HelmholtzParts helmholtz_2d(const Field2& f);

// L2 norm of div_xy of the vertical average of v (2-component input).
double barotropic_divergence(const RealField& v);

// P v = v - grad Psi(x,y) with Lap Psi = div_xy (vertical average of v).
RealField hydrostatic_project(const RealField& v);
// The removed part Q v, broadcast constant in z.
RealField hydrostatic_q(const RealField& v);
// In-place P on a 2-component spectral field (acts on the k_z = 0 slab).
void hydrostatic_project_spectral(SpectralField& V);

// Periodic z-antiderivative int_0^z g dz' per component, built from the
// k_z != 0 modes; the vanishing-mean slab is dropped (and the z Nyquist
// plane, matching the derivative convention).
RealField vertical_antiderivative(const RealField& g);

// w(v); throws if v is not admissible within tol * max(1, ||v||).
RealField vertical_velocity(const RealField& v, double admissibility_tol = 1e-8);

struct BarotropicSplit {
    Field2 vbar;      // vertical average
    RealField vtilde; // v - vbar, zero vertical average
};
BarotropicSplit barotropic_split(const RealField& v);

// Mean over z of a 3d field (all components).
Field2 vertical_average(const RealField& v);

struct PressureGradients {
    std::vector<Field2> grad_ptilde; // Q[(sigma_n . grad) v] per mode
    Field2 grad_p;                   // Q[drift]
};

// drift must be a 2-component field on the same grid as v.
PressureGradients recover_pressures(const RealField& v, const NoiseEnsemble& e,
                                    const RealField& drift);

} // namespace hpe
