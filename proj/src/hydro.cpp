#include "hpe/hydro.hpp"

#include "hpe/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hpe {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void require_two_components(const RealField& v, const char* who) {
    if (v.components != 2)
        throw std::invalid_argument(std::string(who) + ": expected a 2-component field");
}
} // namespace

Field2 vertical_average(const RealField& v) {
    const auto& g = v.grid;
    Field2 out(g.nx, g.ny, v.components);
    for (int c = 0; c < v.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const double* col = v.component(c) + (std::size_t(ix) * g.ny + iy) * g.nz;
                double acc = 0.0;
                for (int iz = 0; iz < g.nz; ++iz) acc += col[iz];
                out.at(c, ix, iy) = acc / double(g.nz);
            }
    return out;
}

HelmholtzParts helmholtz_2d(const Field2& f) {
    if (f.components != 2)
        throw std::invalid_argument("helmholtz_2d: expected a 2-component field");
    SpectralField2 F = to_spectral(f);
    SpectralField2 G(f.nx, f.ny, 2);
    for (int ix = 0; ix < f.nx; ++ix)
        for (int iy = 0; iy < f.ny; ++iy) {
            // derivative convention: Nyquist drops, so those modes carry no
            // measurable divergence and stay in the divfree part untouched
            if (2 * ix == f.nx || 2 * iy == f.ny) continue;
            double kx = wavenumber(ix, f.nx);
            double ky = wavenumber(iy, f.ny);
            double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            // (k otimes k / |k|^2) f-hat: the curl-free component
            std::complex<double> kdotf = kx * F.at(0, ix, iy) + ky * F.at(1, ix, iy);
            G.at(0, ix, iy) = kx * kdotf / k2;
            G.at(1, ix, iy) = ky * kdotf / k2;
        }
    HelmholtzParts parts;
    parts.gradient = to_physical(G);
    parts.divfree = Field2(f.nx, f.ny, 2);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        parts.divfree.values[i] = f.values[i] - parts.gradient.values[i];
    return parts;
}

double barotropic_divergence(const RealField& v) {
    require_two_components(v, "barotropic_divergence");
    Field2 bar = vertical_average(v);
    SpectralField2 F = to_spectral(bar);
    double acc = 0.0;
    for (int ix = 0; ix < bar.nx; ++ix)
        for (int iy = 0; iy < bar.ny; ++iy) {
            int kx = wavenumber(ix, bar.nx);
            int ky = wavenumber(iy, bar.ny);
            if (2 * kx == bar.nx) kx = 0; // derivative convention: Nyquist drops
            if (2 * ky == bar.ny) ky = 0;
            std::complex<double> div =
                std::complex<double>(0.0, two_pi * kx) * F.at(0, ix, iy) +
                std::complex<double>(0.0, two_pi * ky) * F.at(1, ix, iy);
            acc += std::norm(div);
        }
    return std::sqrt(acc);
}

RealField hydrostatic_q(const RealField& v) {
    require_two_components(v, "hydrostatic_q");
    Field2 grad = helmholtz_2d(vertical_average(v)).gradient;
    RealField out(v.grid, 2);
    const auto& g = v.grid;
    for (int c = 0; c < 2; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                double val = grad.at(c, ix, iy);
                double* col = out.component(c) + (std::size_t(ix) * g.ny + iy) * g.nz;
                for (int iz = 0; iz < g.nz; ++iz) col[iz] = val;
            }
    return out;
}

RealField hydrostatic_project(const RealField& v) {
    RealField q = hydrostatic_q(v);
    RealField out = v;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= q.values[i];
    return out;
}

void hydrostatic_project_spectral(SpectralField& V) {
    if (V.components != 2)
        throw std::invalid_argument("hydrostatic_project_spectral: expected 2 components");
    const auto& g = V.grid;
    const int iz0 = wave_index(0, g.nz);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            if (2 * ix == g.nx || 2 * iy == g.ny) continue; // Nyquist drops
            double kx = wavenumber(ix, g.nx);
            double ky = wavenumber(iy, g.ny);
            double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            std::complex<double> kdotf =
                kx * V.at(0, ix, iy, iz0) + ky * V.at(1, ix, iy, iz0);
            V.at(0, ix, iy, iz0) -= kx * kdotf / k2;
            V.at(1, ix, iy, iz0) -= ky * kdotf / k2;
        }
}

RealField vertical_antiderivative(const RealField& f) {
    const auto& g = f.grid;
    SpectralField F = to_spectral(f);
    SpectralField W(g, f.components);
    for (int c = 0; c < f.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                std::complex<double> at_zero = 0.0;
                for (int iz = 0; iz < g.nz; ++iz) {
                    int kz = wavenumber(iz, g.nz);
                    if (kz == 0 || 2 * kz == g.nz) continue;
                    // int_0^z e^{2 pi i kz z'} dz' = (e^{2 pi i kz z} - 1)/(2 pi i kz)
                    std::complex<double> coef =
                        F.at(c, ix, iy, iz) / std::complex<double>(0.0, two_pi * kz);
                    W.at(c, ix, iy, iz) = coef;
                    at_zero -= coef;
                }
                W.at(c, ix, iy, wave_index(0, g.nz)) = at_zero;
            }
    return to_physical(W);
}

RealField vertical_velocity(const RealField& v, double admissibility_tol) {
    require_two_components(v, "vertical_velocity");
    double div = barotropic_divergence(v);
    double scale = std::max(1.0, l2_norm(v));
    if (div > admissibility_tol * scale)
        throw std::invalid_argument("vertical_velocity: input is not admissible");

    SpectralField V = to_spectral(v);
    SpectralField D(v.grid, 1);
    {
        SpectralField dx = differentiate(V, 0);
        SpectralField dy = differentiate(V, 1);
        const auto& g = v.grid;
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy)
                for (int iz = 0; iz < g.nz; ++iz)
                    D.at(0, ix, iy, iz) = dx.at(0, ix, iy, iz) + dy.at(1, ix, iy, iz);
    }
    RealField div_xy = to_physical(D);
    RealField w = vertical_antiderivative(div_xy);
    for (double& x : w.values) x = -x;
    return w;
}

BarotropicSplit barotropic_split(const RealField& v) {
    BarotropicSplit out;
    out.vbar = vertical_average(v);
    out.vtilde = v;
    const auto& g = v.grid;
    for (int c = 0; c < v.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                double bar = out.vbar.at(c, ix, iy);
                double* col =
                    out.vtilde.component(c) + (std::size_t(ix) * g.ny + iy) * g.nz;
                for (int iz = 0; iz < g.nz; ++iz) col[iz] -= bar;
            }
    return out;
}

PressureGradients recover_pressures(const RealField& v, const NoiseEnsemble& e,
                                    const RealField& drift) {
    require_two_components(v, "recover_pressures");
    require_two_components(drift, "recover_pressures(drift)");
    if (!(drift.grid == v.grid))
        throw std::invalid_argument("recover_pressures: drift grid mismatch");
    const auto& g = v.grid;

    SpectralField V = to_spectral(v);
    RealField gx = to_physical(differentiate(V, 0));
    RealField gy = to_physical(differentiate(V, 1));
    RealField gz = to_physical(differentiate(V, 2));

    PressureGradients out;
    std::vector<RealField> sigmas = evaluate_modes(e, g);
    const std::size_t n = std::size_t(g.points());
    for (const auto& s : sigmas) {
        RealField adv(g, 2);
        for (int c = 0; c < 2; ++c) {
            double* dst = adv.component(c);
            const double* ax = gx.component(c);
            const double* ay = gy.component(c);
            const double* az = gz.component(c);
            const double* s0 = s.component(0);
            const double* s1 = s.component(1);
            const double* s2 = (s.components == 3) ? s.component(2) : nullptr;
            for (std::size_t i = 0; i < n; ++i) {
                double val = s0[i] * ax[i] + s1[i] * ay[i];
                if (s2) val += s2[i] * az[i];
                dst[i] = val;
            }
        }
        out.grad_ptilde.push_back(helmholtz_2d(vertical_average(adv)).gradient);
    }
    out.grad_p = helmholtz_2d(vertical_average(drift)).gradient;
    return out;
}

} // namespace hpe
