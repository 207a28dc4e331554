#include "hpe/dynamics.hpp"

#include "hpe/fft.hpp"
#include "hpe/hydro.hpp"
#include "hpe/rng.hpp"
#include "hpe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hpe {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

NoiseEnsemble lifted(const NoiseEnsemble& e) {
    if (e.d == 2 && !e.vertical_lift) return lift_horizontal(e);
    return e;
}

// Evaluated mode fields reused across drift/diffusion within one step.
struct Workspace {
    std::vector<RealField> sigma;
    std::vector<RealField> chi;
};

Workspace make_workspace(const SolverConfig& cfg) {
    Workspace ws;
    if (!cfg.sigma.modes.empty()) ws.sigma = evaluate_modes(lifted(cfg.sigma), cfg.grid);
    if (!cfg.chi.modes.empty()) ws.chi = evaluate_modes(lifted(cfg.chi), cfg.grid);
    return ws;
}

struct Gradient {
    RealField x, y, z; // same component count as the source field
};

Gradient gradient_of(const SpectralField& F) {
    Gradient g;
    g.x = to_physical(differentiate(F, 0));
    g.y = to_physical(differentiate(F, 1));
    g.z = to_physical(differentiate(F, 2));
    return g;
}

void add_scaled(RealField& dst, const RealField& src, double w) {
    for (std::size_t i = 0; i < dst.values.size(); ++i) dst.values[i] += w * src.values[i];
}

// sigma . grad f pointwise; sigma may have 2 or 3 components.
RealField transport_term(const RealField& sigma, const Gradient& g) {
    const std::size_t n = std::size_t(g.x.grid.points());
    RealField out(g.x.grid, g.x.components);
    const double* s0 = sigma.component(0);
    const double* s1 = sigma.component(1);
    const double* s2 = (sigma.components == 3) ? sigma.component(2) : nullptr;
    for (int c = 0; c < out.components; ++c) {
        double* dst = out.component(c);
        const double* ax = g.x.component(c);
        const double* ay = g.y.component(c);
        const double* az = g.z.component(c);
        for (std::size_t i = 0; i < n; ++i) {
            double val = s0[i] * ax[i] + s1[i] * ay[i];
            if (s2) val += s2[i] * az[i];
            dst[i] = val;
        }
    }
    return out;
}

// div(a grad f) assembled as d_i (a_ij d_j f); returns spectral.
SpectralField anisotropic_diffusion(const MatrixField& a, const Gradient& g) {
    const GridSpec& grid = g.x.grid;
    const int ncomp = g.x.components;
    const std::size_t n = std::size_t(grid.points());
    SpectralField acc(grid, ncomp);
    for (int axis = 0; axis < 3; ++axis) {
        RealField flux(grid, ncomp);
        for (int c = 0; c < ncomp; ++c) {
            double* dst = flux.component(c);
            const double* fx = g.x.component(c);
            const double* fy = g.y.component(c);
            const double* fz = g.z.component(c);
            for (std::size_t i = 0; i < n; ++i) {
                const double* m = a.at(i);
                dst[i] = m[MatrixField::entry(axis, 0)] * fx[i] +
                         m[MatrixField::entry(axis, 1)] * fy[i] +
                         m[MatrixField::entry(axis, 2)] * fz[i];
            }
        }
        SpectralField d = differentiate(to_spectral(flux), axis);
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += d.coeffs[i];
    }
    return acc;
}

RealField advection_of(const RealField& v, const RealField& w, const RealField& f,
                       const Gradient& gf, AdvectionForm form) {
    const GridSpec& grid = f.grid;
    const std::size_t n = std::size_t(grid.points());
    RealField out(grid, f.components);
    if (form == AdvectionForm::nondivergence) {
        for (int c = 0; c < f.components; ++c) {
            double* dst = out.component(c);
            const double* ax = gf.x.component(c);
            const double* ay = gf.y.component(c);
            const double* az = gf.z.component(c);
            const double* ux = v.component(0);
            const double* uy = v.component(1);
            const double* uz = w.component(0);
            for (std::size_t i = 0; i < n; ++i)
                dst[i] = ux[i] * ax[i] + uy[i] * ay[i] + uz[i] * az[i];
        }
        return out;
    }
    // divergence form: d_x(u_x f) + d_y(u_y f) + d_z(w f)
    SpectralField acc(grid, f.components);
    for (int axis = 0; axis < 3; ++axis) {
        RealField prod(grid, f.components);
        const double* u = (axis == 2) ? w.component(0) : v.component(axis);
        for (int c = 0; c < f.components; ++c) {
            double* dst = prod.component(c);
            const double* src = f.component(c);
            for (std::size_t i = 0; i < n; ++i) dst[i] = u[i] * src[i];
        }
        SpectralField d = differentiate(to_spectral(prod), axis);
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += d.coeffs[i];
    }
    return to_physical(acc);
}

void check_finite(const SimState& s) {
    for (double x : s.v.values)
        if (!std::isfinite(x)) throw BlowUpError(s.t, s.step);
    for (double x : s.theta.values)
        if (!std::isfinite(x)) throw BlowUpError(s.t, s.step);
}

SpectralField pressure_correction_spectral(const Gradient& gv,
                                           const std::vector<RealField>& sigma,
                                           double h, const std::vector<RealField>* b0) {
    const GridSpec& grid = gv.x.grid;
    SpectralField acc(grid, 2);
    for (std::size_t m = 0; m < sigma.size(); ++m) {
        RealField adv = transport_term(sigma[m], gv);
        Field2 p = helmholtz_2d(vertical_average(adv)).gradient; // Q[(sigma.grad)v]
        // div( p (x) sigma ): component i gets sum_xi d_xi (p_i sigma_xi)
        for (int axis = 0; axis < 3; ++axis) {
            if (sigma[m].components == 2 && axis == 2) continue;
            const double* s = (axis < sigma[m].components) ? sigma[m].component(axis)
                                                           : nullptr;
            if (!s) continue;
            RealField prod(grid, 2);
            for (int c = 0; c < 2; ++c) {
                double* dst = prod.component(c);
                std::size_t i = 0;
                for (int ix = 0; ix < grid.nx; ++ix)
                    for (int iy = 0; iy < grid.ny; ++iy) {
                        double pv = p.at(c, ix, iy);
                        for (int iz = 0; iz < grid.nz; ++iz, ++i) dst[i] = pv * s[i];
                    }
            }
            SpectralField d = differentiate(to_spectral(prod), axis);
            for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
                acc.coeffs[i] += -0.5 * h * d.coeffs[i];
        }
        if (b0 && m < b0->size() && (*b0)[m].components == 1) {
            RealField prod(grid, 2);
            const double* bw = (*b0)[m].component(0);
            for (int c = 0; c < 2; ++c) {
                double* dst = prod.component(c);
                std::size_t i = 0;
                for (int ix = 0; ix < grid.nx; ++ix)
                    for (int iy = 0; iy < grid.ny; ++iy) {
                        double pv = p.at(c, ix, iy);
                        for (int iz = 0; iz < grid.nz; ++iz, ++i) dst[i] = pv * bw[i];
                    }
            }
            SpectralField d = to_spectral(prod);
            for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
                acc.coeffs[i] += -0.5 * h * d.coeffs[i];
        }
    }
    return acc;
}

Increment drift_impl(const SimState& state, const SolverConfig& cfg, const Workspace& ws) {
    const GridSpec& grid = cfg.grid;
    if (!(state.v.grid == grid) || state.v.components != 2)
        throw std::invalid_argument("drift: state/grid mismatch");
    if (cfg.coeffs.a.m.empty() || !(cfg.coeffs.a.grid == grid))
        throw std::invalid_argument("drift: coefficient field a is missing or mismatched");

    SpectralField V = to_spectral(state.v);
    Gradient gv = gradient_of(V);

    SpectralField acc = anisotropic_diffusion(cfg.coeffs.a, gv);
    RealField sum(grid, 2);

    if (cfg.coeffs.b.components == 3)
        add_scaled(sum, transport_term(cfg.coeffs.b, gv), 1.0);

    RealField w; // shared with the theta equation
    const bool need_w = cfg.enable_nonlinearity;
    if (need_w) w = vertical_velocity(state.v);

    if (cfg.enable_nonlinearity)
        add_scaled(sum, advection_of(state.v, w, state.v, gv, cfg.advection), -1.0);

    if (state.has_theta()) {
        SpectralField T = to_spectral(state.theta);
        RealField tgrad(grid, 2);
        {
            RealField tx = to_physical(differentiate(T, 0));
            RealField ty = to_physical(differentiate(T, 1));
            const std::size_t n = std::size_t(grid.points());
            for (std::size_t i = 0; i < n; ++i) {
                tgrad.values[i] = tx.values[i];
                tgrad.values[n + i] = ty.values[i];
            }
        }
        add_scaled(sum, vertical_antiderivative(tgrad), 1.0);
    }

    if (cfg.coeffs.h != 0.0 && !ws.sigma.empty()) {
        SpectralField corr = pressure_correction_spectral(
            gv, ws.sigma, cfg.coeffs.h, cfg.coeffs.b0.empty() ? nullptr : &cfg.coeffs.b0);
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += corr.coeffs[i];
    }

    if (cfg.forcing.components == 2) add_scaled(sum, cfg.forcing, 1.0);

    {
        SpectralField S = to_spectral(sum);
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += S.coeffs[i];
    }
    if (cfg.dealias_products) dealias_in_place(acc);
    hydrostatic_project_spectral(acc);

    Increment out;
    out.dv = to_physical(acc);

    if (state.has_theta()) {
        if (cfg.theta_coeffs.a.m.empty() || !(cfg.theta_coeffs.a.grid == grid))
            throw std::invalid_argument("drift: theta coefficient field is missing");
        SpectralField T = to_spectral(state.theta);
        Gradient gt = gradient_of(T);
        SpectralField tacc = anisotropic_diffusion(cfg.theta_coeffs.a, gt);
        RealField tsum(grid, 1);
        if (cfg.theta_coeffs.b.components == 3)
            add_scaled(tsum, transport_term(cfg.theta_coeffs.b, gt), 1.0);
        if (cfg.enable_nonlinearity) {
            if (w.components == 0) w = vertical_velocity(state.v);
            add_scaled(tsum, advection_of(state.v, w, state.theta, gt, cfg.advection), -1.0);
        }
        {
            SpectralField S = to_spectral(tsum);
            for (std::size_t i = 0; i < tacc.coeffs.size(); ++i)
                tacc.coeffs[i] += S.coeffs[i];
        }
        if (cfg.dealias_products) dealias_in_place(tacc);
        out.dtheta = to_physical(tacc);
    }
    return out;
}

Increment diffusion_impl(const SimState& state, const SolverConfig& cfg,
                         const NoiseIncrement& inc, const Workspace& ws) {
    const GridSpec& grid = cfg.grid;
    if (inc.dW.size() != cfg.channels())
        throw std::invalid_argument("diffusion: increment size mismatch");

    Increment out;
    out.dv = RealField(grid, 2);

    SpectralField V = to_spectral(state.v);
    Gradient gv = gradient_of(V);
    for (std::size_t m = 0; m < ws.sigma.size(); ++m)
        add_scaled(out.dv, transport_term(ws.sigma[m], gv), inc.dW[m]);
    for (std::size_t m = 0; m < cfg.additive_noise.size(); ++m)
        add_scaled(out.dv, cfg.additive_noise[m], inc.dW[ws.sigma.size() + m]);

    {
        SpectralField Z = to_spectral(out.dv);
        if (cfg.dealias_products) dealias_in_place(Z);
        hydrostatic_project_spectral(Z);
        out.dv = to_physical(Z);
    }

    if (state.has_theta() && !ws.chi.empty()) {
        out.dtheta = RealField(grid, 1);
        SpectralField T = to_spectral(state.theta);
        Gradient gt = gradient_of(T);
        for (std::size_t m = 0; m < ws.chi.size(); ++m)
            add_scaled(out.dtheta, transport_term(ws.chi[m], gt), inc.dW[m]);
        if (cfg.dealias_products) {
            SpectralField Z = to_spectral(out.dtheta);
            dealias_in_place(Z);
            out.dtheta = to_physical(Z);
        }
    } else if (state.has_theta()) {
        out.dtheta = RealField(grid, 1);
    }
    return out;
}

SimState step_impl(const SimState& state, const SolverConfig& cfg,
                   const NoiseIncrement& inc, const Workspace& ws) {
    Increment d = drift_impl(state, cfg, ws);
    const bool stochastic = cfg.channels() > 0;
    Increment z;
    if (stochastic) z = diffusion_impl(state, cfg, inc, ws);

    const double dt = cfg.dt;
    const GridSpec& grid = cfg.grid;

    SimState next;
    next.t = state.t + dt;
    next.step = state.step + 1;

    {
        SpectralField V = to_spectral(state.v);
        SpectralField D = to_spectral(d.dv);
        SpectralField rhs(grid, 2);
        const double nu0 = cfg.coeffs.nu0;
        for (int c = 0; c < 2; ++c)
            for (int ix = 0; ix < grid.nx; ++ix)
                for (int iy = 0; iy < grid.ny; ++iy)
                    for (int iz = 0; iz < grid.nz; ++iz) {
                        double lam = laplacian_symbol(grid, ix, iy, iz);
                        std::complex<double> r =
                            V.at(c, ix, iy, iz) * (1.0 + dt * nu0 * lam) +
                            dt * D.at(c, ix, iy, iz);
                        rhs.at(c, ix, iy, iz) = r / (1.0 + dt * nu0 * lam);
                    }
        if (stochastic && z.dv.components == 2) {
            SpectralField Z = to_spectral(z.dv);
            for (int c = 0; c < 2; ++c)
                for (int ix = 0; ix < grid.nx; ++ix)
                    for (int iy = 0; iy < grid.ny; ++iy)
                        for (int iz = 0; iz < grid.nz; ++iz) {
                            double lam = laplacian_symbol(grid, ix, iy, iz);
                            rhs.at(c, ix, iy, iz) +=
                                Z.at(c, ix, iy, iz) / (1.0 + dt * nu0 * lam);
                        }
        }
        hydrostatic_project_spectral(rhs);
        next.v = to_physical(rhs);
    }

    if (state.has_theta()) {
        SpectralField T = to_spectral(state.theta);
        SpectralField D = to_spectral(d.dtheta);
        const double nu0 = cfg.theta_coeffs.nu0;
        SpectralField rhs(grid, 1);
        for (int ix = 0; ix < grid.nx; ++ix)
            for (int iy = 0; iy < grid.ny; ++iy)
                for (int iz = 0; iz < grid.nz; ++iz) {
                    double lam = laplacian_symbol(grid, ix, iy, iz);
                    std::complex<double> r = T.at(0, ix, iy, iz) * (1.0 + dt * nu0 * lam) +
                                             dt * D.at(0, ix, iy, iz);
                    rhs.at(0, ix, iy, iz) = r / (1.0 + dt * nu0 * lam);
                }
        if (stochastic && z.dtheta.components == 1) {
            SpectralField Z = to_spectral(z.dtheta);
            for (int ix = 0; ix < grid.nx; ++ix)
                for (int iy = 0; iy < grid.ny; ++iy)
                    for (int iz = 0; iz < grid.nz; ++iz) {
                        double lam = laplacian_symbol(grid, ix, iy, iz);
                        rhs.at(0, ix, iy, iz) +=
                            Z.at(0, ix, iy, iz) / (1.0 + dt * nu0 * lam);
                    }
        }
        next.theta = to_physical(rhs);
    }

    check_finite(next);
    return next;
}

} // namespace

DriftCoeffs stratonovich_drift_coeffs(const NoiseEnsemble& e, const GridSpec& g,
                                      double viscous_weight) {
    DriftCoeffs c;
    MatrixField s = sigma_outer_sum(lifted(e), g);
    c.a = MatrixField::identity(g, 0.5 * viscous_weight);
    for (std::size_t i = 0; i < c.a.m.size(); ++i) c.a.m[i] += 0.5 * s.m[i];
    // All ensemble modes are divergence free (direction . k = 0 exactly),
    // so b and b0 vanish identically.
    c.h = 1.0;
    // implicit split weight; rank-deficient a (e.g. constant sigma) puts the
    // true minimum at 0, so clamp solver noise rather than anti-diffuse
    c.nu0 = std::max(0.0, min_eigenvalue(c.a));
    return c;
}

DriftCoeffs theta_stratonovich_coeffs(const NoiseEnsemble& chi, const GridSpec& g,
                                      double viscous_weight) {
    DriftCoeffs c = stratonovich_drift_coeffs(chi, g, viscous_weight);
    c.h = 0.0; // no pressure correction in the temperature equation
    return c;
}

RealField advective_nonlinearity(const RealField& v, bool dealias_products,
                                 AdvectionForm form) {
    SpectralField V = to_spectral(v);
    Gradient gv = gradient_of(V);
    RealField w = vertical_velocity(v);
    RealField out = advection_of(v, w, v, gv, form);
    if (dealias_products) {
        SpectralField O = dealias(to_spectral(out));
        out = to_physical(O);
    }
    return out;
}

RealField ito_pressure_correction(const RealField& v, const NoiseEnsemble& e, double h,
                                  const std::vector<RealField>* b0) {
    if (h == 0.0 || e.modes.empty()) return RealField(v.grid, 2);
    SpectralField V = to_spectral(v);
    Gradient gv = gradient_of(V);
    std::vector<RealField> sigma = evaluate_modes(lifted(e), v.grid);
    return to_physical(pressure_correction_spectral(gv, sigma, h, b0));
}

Increment drift(const SimState& state, const SolverConfig& cfg) {
    Workspace ws = make_workspace(cfg);
    return drift_impl(state, cfg, ws);
}

Increment diffusion(const SimState& state, const SolverConfig& cfg,
                    const NoiseIncrement& inc) {
    Workspace ws = make_workspace(cfg);
    return diffusion_impl(state, cfg, inc, ws);
}

NoiseIncrement draw_increment(const SolverConfig& cfg, std::uint64_t step) {
    NoiseIncrement inc;
    const std::size_t n = cfg.channels();
    inc.dW.resize(n);
    const double scale = std::sqrt(cfg.dt);
    for (std::size_t c = 0; c < n; ++c)
        inc.dW[c] = scale * gaussian(cfg.seed, step, c);
    return inc;
}

SimState step(const SimState& state, const SolverConfig& cfg) {
    return step(state, cfg, draw_increment(cfg, state.step));
}

SimState step(const SimState& state, const SolverConfig& cfg, const NoiseIncrement& inc) {
    Workspace ws = make_workspace(cfg);
    return step_impl(state, cfg, inc, ws);
}

SimState simulate(const SolverConfig& cfg, SimState state, double t_end,
                  const StepObserver& observe, const IncrementSource& increments) {
    if (cfg.dt <= 0.0) throw std::invalid_argument("simulate: dt must be positive");
    double steps_d = (t_end - state.t) / cfg.dt;
    auto nsteps = std::int64_t(std::llround(steps_d));
    if (nsteps < 0 || std::abs(steps_d - double(nsteps)) > 1e-9 * std::max(1.0, steps_d))
        throw std::invalid_argument("simulate: t_end - t0 must be a multiple of dt");

    Workspace ws = make_workspace(cfg);
    for (std::int64_t i = 0; i < nsteps; ++i) {
        NoiseIncrement inc =
            increments ? increments(state.step) : draw_increment(cfg, state.step);
        SimState next = step_impl(state, cfg, inc, ws);
        if (observe) observe(state, next, inc);
        state = std::move(next);
    }
    return state;
}

} // namespace hpe
