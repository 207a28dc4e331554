// Time integration of the stochastic primitive equations in Ito form:
//
//   dv = P[ div(a grad v) + (b.grad)v - (v.grad_xy)v - w(v) dz v
//           + f_tilde_h(v) + int_0^z grad_xy theta + f ] dt
//        + sum_n P[(sigma_n.grad)v] dW^n + sum_m P[G_m] dW^(M+m)
//
// with the optional temperature equation advected by the same flow and
// driven by the same Brownian family.  The scheme is IMEX Euler-Maruyama:
// the nu0-Laplacian part (nu0 = min eigenvalue of a) is implicit, the rest
// explicit, and the state is reprojected after every step.
//
// Stratonovich dynamics are run by converting coefficients, never by
// midpoint stepping: a = 1/2[Id + sum sigma sigma^T], b = b0 = 0 for
// divergence-free modes, h = 1.

#pragma once

#include "hpe/coeffs.hpp"
#include "hpe/grid.hpp"
#include "hpe/noise.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hpe {

struct SimState {
    RealField v;     // 2 components
    RealField theta; // 1 component; components == 0 when absent
    double t = 0.0;
    std::uint64_t step = 0;

    bool has_theta() const { return theta.components > 0; }
};

struct NoiseIncrement {
    std::vector<double> dW; // N(0, dt) per channel
};

enum class Formulation { ito, stratonovich };
enum class AdvectionForm { nondivergence, divergence };

struct SolverConfig {
    GridSpec grid;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    Formulation formulation = Formulation::ito;

    NoiseEnsemble sigma; // velocity transport noise (empty = deterministic)
    NoiseEnsemble chi;   // temperature transport noise

    DriftCoeffs coeffs;       // (a, b, b0, h) for v
    DriftCoeffs theta_coeffs; // (d, k) for theta; h ignored

    bool dealias_products = true;
    bool enable_nonlinearity = true;
    AdvectionForm advection = AdvectionForm::nondivergence;

    std::vector<RealField> additive_noise; // admissible 2-component fields G_m
    RealField forcing;                     // deterministic f; empty = none

    int diagnostics_stride = 1;
    double serrin_p0 = 4.0;
    double serrin_q0 = 4.0;

    // Channel n drives sigma mode n (then the additive fields) and, in
    // parallel, chi mode n.
    std::size_t channels() const {
        return std::max(sigma.modes.size() + additive_noise.size(), chi.modes.size());
    }
};

struct BlowUpError : std::runtime_error {
    double t;
    std::uint64_t step;
    BlowUpError(double t_, std::uint64_t step_)
        : std::runtime_error("solution lost finiteness"), t(t_), step(step_) {}
};

// Ito coefficients equivalent to the Stratonovich system.  viscous_weight
// scales the identity part of a = 1/2[viscous_weight*Id + sum sigma sigma^T];
// 1 is the model value, 0 the zero-viscosity override used by transport
// tests.
DriftCoeffs stratonovich_drift_coeffs(const NoiseEnsemble& e, const GridSpec& g,
                                      double viscous_weight = 1.0);
// Same conversion for the temperature coefficients (d, k).
DriftCoeffs theta_stratonovich_coeffs(const NoiseEnsemble& chi, const GridSpec& g,
                                      double viscous_weight = 1.0);

// (v.grad_xy)v + w(v) dz v (or its divergence form), dealiased on request.
RealField advective_nonlinearity(const RealField& v, bool dealias_products = true,
                                 AdvectionForm form = AdvectionForm::nondivergence);

// f_tilde_{h,sigma} v = -(h/2) sum_n [ div(Q[(sigma_n.grad)v] (x) sigma_n)
//                                      + b0_n Q[(sigma_n.grad)v] ]
RealField ito_pressure_correction(const RealField& v, const NoiseEnsemble& e, double h,
                                  const std::vector<RealField>* b0 = nullptr);

struct Increment {
    RealField dv;
    RealField dtheta; // components == 0 when theta absent
};

Increment drift(const SimState& state, const SolverConfig& cfg);
Increment diffusion(const SimState& state, const SolverConfig& cfg,
                    const NoiseIncrement& inc);

// Gaussian increments for one step: dW_n = sqrt(dt) * N(0,1) keyed by
// (seed, step, channel).
NoiseIncrement draw_increment(const SolverConfig& cfg, std::uint64_t step);

SimState step(const SimState& state, const SolverConfig& cfg);
SimState step(const SimState& state, const SolverConfig& cfg, const NoiseIncrement& inc);

// Called after every step; inc is what the step consumed.
using StepObserver =
    std::function<void(const SimState& before, const SimState& after,
                       const NoiseIncrement& inc)>;

// Runs ceil(t_end/dt - 1/2) steps (t_end must be a near-multiple of dt).
// Throws BlowUpError on non-finite values.  An increment_source overrides
// the internal RNG (used for path refinement studies).
using IncrementSource = std::function<NoiseIncrement(std::uint64_t step)>;

SimState simulate(const SolverConfig& cfg, SimState state, double t_end,
                  const StepObserver& observe = nullptr,
                  const IncrementSource& increments = nullptr);

} // namespace hpe
