#include "hpe/diagnostics.hpp"

#include "hpe/fft.hpp"
#include "hpe/hydro.hpp"
#include "hpe/spaces.hpp"
#include "hpe/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hpe {

namespace {

double l2sq_spectral(const SpectralField& F) {
    double s = 0.0;
    for (const auto& c : F.coeffs) s += std::norm(c);
    return s;
}

double l2sq(const RealField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return s * f.grid.cell_volume();
}

// sigma . grad v with sigma of 2 or 3 components; gradient fields share v's
// component count.
RealField transport(const RealField& sigma, const RealField& gx, const RealField& gy,
                    const RealField& gz) {
    const std::size_t n = std::size_t(gx.grid.points());
    RealField out(gx.grid, gx.components);
    const double* s0 = sigma.component(0);
    const double* s1 = sigma.component(1);
    const double* s2 = (sigma.components == 3) ? sigma.component(2) : nullptr;
    for (int c = 0; c < out.components; ++c) {
        double* dst = out.component(c);
        const double* ax = gx.component(c);
        const double* ay = gy.component(c);
        const double* az = gz.component(c);
        for (std::size_t i = 0; i < n; ++i) {
            double val = s0[i] * ax[i] + s1[i] * ay[i];
            if (s2) val += s2[i] * az[i];
            dst[i] = val;
        }
    }
    return out;
}

} // namespace

DiagnosticsRecord instantaneous_record(const SimState& s, double serrin_p0,
                                       double serrin_q0) {
    DiagnosticsRecord rec;
    rec.t = s.t;
    rec.l2_v = l2sq(s.v);

    SpectralField V = to_spectral(s.v);
    SpectralField dx = differentiate(V, 0);
    SpectralField dy = differentiate(V, 1);
    SpectralField dz = differentiate(V, 2);
    rec.h1_grad = l2sq_spectral(dx) + l2sq_spectral(dy) + l2sq_spectral(dz);

    // Baroclinic part: drop the k_z = 0 slab.
    SpectralField Vt = V;
    const GridSpec& g = s.v.grid;
    const int iz0 = wave_index(0, g.nz);
    for (int c = 0; c < Vt.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) Vt.at(c, ix, iy, iz0) = 0.0;

    double dz_l2 = l2sq_spectral(dz);
    RealField vt = to_physical(Vt);
    RealField tx = to_physical(differentiate(Vt, 0));
    RealField ty = to_physical(differentiate(Vt, 1));
    RealField tz = to_physical(differentiate(Vt, 2));

    const std::size_t n = std::size_t(g.points());
    double l4 = 0.0, mixed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = 0.0, g2 = 0.0;
        for (int c = 0; c < 2; ++c) {
            std::size_t j = std::size_t(c) * n + i;
            m2 += vt.values[j] * vt.values[j];
            g2 += tx.values[j] * tx.values[j] + ty.values[j] * ty.values[j] +
                  tz.values[j] * tz.values[j];
        }
        l4 += m2 * m2;
        mixed += m2 * g2;
    }
    l4 *= g.cell_volume();
    mixed *= g.cell_volume();

    rec.X_t = dz_l2 + l4;
    double dz_h1 = dz_l2 + l2sq_spectral(differentiate(dz, 0)) +
                   l2sq_spectral(differentiate(dz, 1)) + l2sq_spectral(differentiate(dz, 2));
    rec.Y_t_integrand = dz_h1 + mixed;

    const double mu0 = serrin_mu0_real(serrin_p0, serrin_q0);
    RealField bessel = to_physical(bessel_multiplier(V, mu0));
    rec.serrin_integrand = std::pow(lebesgue_norm(bessel, serrin_q0, 2.0), serrin_p0);

    rec.incompressibility_residual = barotropic_divergence(s.v);

    if (s.has_theta()) rec.l2_theta = l2sq(s.theta);
    return rec;
}

EnergyLedger::EnergyLedger(const SolverConfig& cfg) : cfg_(cfg) {
    if (!cfg.sigma.modes.empty()) {
        NoiseEnsemble e = cfg.sigma;
        if (e.d == 2 && !e.vertical_lift) e = lift_horizontal(e);
        sigma_ = evaluate_modes(e, cfg.grid);
    }
}

void EnergyLedger::start(const SimState& s0) {
    records_.push_back(instantaneous_record(s0, cfg_.serrin_p0, cfg_.serrin_q0));
    pending_balance_ = 0.0;
    steps_seen_ = 0;
}

void EnergyLedger::observe(const SimState& before, const SimState& after,
                           const NoiseIncrement& inc) {
    const double dt = after.t - before.t;
    const GridSpec& g = cfg_.grid;

    SpectralField V = to_spectral(before.v);
    RealField gx = to_physical(differentiate(V, 0));
    RealField gy = to_physical(differentiate(V, 1));
    RealField gz = to_physical(differentiate(V, 2));

    // 2 dt (a : grad v, grad v) = 2 dt sum_c int (grad v_c) . a (grad v_c)
    double aggrad = 0.0;
    if (!cfg_.coeffs.a.m.empty()) {
        const std::size_t n = std::size_t(g.points());
        for (int c = 0; c < 2; ++c) {
            const double* ax = gx.component(c);
            const double* ay = gy.component(c);
            const double* az = gz.component(c);
            for (std::size_t i = 0; i < n; ++i) {
                const double* m = cfg_.coeffs.a.at(i);
                double d[3] = {ax[i], ay[i], az[i]};
                for (int r = 0; r < 3; ++r)
                    for (int s = 0; s < 3; ++s)
                        aggrad += d[r] * m[MatrixField::entry(r, s)] * d[s];
            }
        }
        aggrad *= g.cell_volume();
    }

    // Quadratic variation and martingale terms, channel by channel.
    double qv = 0.0, mart = 0.0;
    const std::size_t nsig = sigma_.size();
    for (std::size_t m = 0; m < nsig + cfg_.additive_noise.size(); ++m) {
        RealField D = (m < nsig) ? transport(sigma_[m], gx, gy, gz)
                                 : cfg_.additive_noise[m - nsig];
        SpectralField Ds = to_spectral(D);
        hydrostatic_project_spectral(Ds);
        qv += l2sq_spectral(Ds);
        if (m < inc.dW.size()) {
            double dot = 0.0; // (v, P D) by Parseval
            for (std::size_t i = 0; i < V.coeffs.size(); ++i)
                dot += std::real(std::conj(V.coeffs[i]) * Ds.coeffs[i]);
            mart += 2.0 * dot * inc.dW[m];
        }
    }

    const double signed_balance =
        (l2sq(after.v) - l2sq(before.v)) + 2.0 * dt * aggrad - dt * qv - mart;
    pending_balance_ += signed_balance;
    ++steps_seen_;

    const int stride = std::max(1, cfg_.diagnostics_stride);
    if (steps_seen_ % std::uint64_t(stride) == 0) {
        DiagnosticsRecord rec = instantaneous_record(after, cfg_.serrin_p0, cfg_.serrin_q0);
        rec.energy_balance_residual = std::abs(pending_balance_);
        records_.push_back(rec);
        pending_balance_ = 0.0;
    }
}

StepObserver EnergyLedger::observer() {
    return [this](const SimState& before, const SimState& after, const NoiseIncrement& inc) {
        observe(before, after, inc);
    };
}

SerrinResult serrin_monitor(const std::vector<DiagnosticsRecord>& records, double p0,
                            double q0, double threshold) {
    const double mu0 = serrin_mu0_real(p0, q0);
    if (std::abs(-2.0 / p0 + mu0 - 2.0 / q0) > 1e-15)
        throw std::logic_error("serrin_monitor: mu0 identity violated");

    SerrinResult res;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        double dt = records[i + 1].t - records[i].t;
        if (dt <= 0.0)
            throw std::invalid_argument("serrin_monitor: records must be time ordered");
        res.integral += dt * records[i].serrin_integrand;
    }
    res.tripped = res.integral > threshold;
    return res;
}

void WeightedTimeNorm::add(double t, double dt, double value) {
    double w = (a == 0.0) ? 1.0 : std::pow(t, a);
    accumulated += dt * w * std::pow(value, p);
}

void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
    const bool with_theta = !records.empty() && records.front().l2_theta.has_value();
    os << "t,l2_v,h1_grad,X_t,Y_t_integrand,serrin_integrand,"
          "incompressibility_residual,energy_balance_residual";
    if (with_theta) os << ",l2_theta";
    os << "\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
        os << buf;
    };
    for (const auto& r : records) {
        put(r.t, ',');
        put(r.l2_v, ',');
        put(r.h1_grad, ',');
        put(r.X_t, ',');
        put(r.Y_t_integrand, ',');
        put(r.serrin_integrand, ',');
        put(r.incompressibility_residual, ',');
        if (with_theta) {
            put(r.energy_balance_residual, ',');
            put(r.l2_theta.value_or(0.0), '\n');
        } else {
            put(r.energy_balance_residual, '\n');
        }
    }
}

} // namespace hpe
