#include "hpe/montecarlo.hpp"

#include "hpe/fft.hpp"
#include "hpe/hydro.hpp"
#include "hpe/rng.hpp"
#include "hpe/spaces.hpp"
#include "hpe/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hpe {

namespace {

double l2sq(const RealField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return s * f.grid.cell_volume();
}

// X_t = ||dz v||^2 + ||vtilde||_{L4}^4 without the rest of the record.
double x_functional(const RealField& v) {
    SpectralField V = to_spectral(v);
    SpectralField dz = differentiate(V, 2);
    double s = 0.0;
    for (const auto& c : dz.coeffs) s += std::norm(c);

    const GridSpec& g = v.grid;
    const int iz0 = wave_index(0, g.nz);
    for (int c = 0; c < V.components; ++c)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) V.at(c, ix, iy, iz0) = 0.0;
    RealField vt = to_physical(V);
    const std::size_t n = std::size_t(g.points());
    double l4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = vt.values[i] * vt.values[i] + vt.values[n + i] * vt.values[n + i];
        l4 += m2 * m2;
    }
    return s + l4 * g.cell_volume();
}

std::vector<std::uint64_t> observation_steps(const SolverConfig& cfg, double t0,
                                             double t_end) {
    auto nsteps = std::uint64_t(std::llround((t_end - t0) / cfg.dt));
    const std::uint64_t stride = std::uint64_t(std::max(1, cfg.diagnostics_stride));
    std::vector<std::uint64_t> obs;
    for (std::uint64_t s = 0; s <= nsteps; s += stride) obs.push_back(s);
    if (obs.back() != nsteps) obs.push_back(nsteps);
    return obs;
}

double quantile_of_sorted(const std::vector<double>& x, double u) {
    if (x.empty()) throw std::logic_error("quantile of empty sample");
    if (x.size() == 1) return x[0];
    double pos = u * double(x.size() - 1);
    std::size_t lo = std::size_t(std::floor(pos));
    std::size_t hi = std::min(lo + 1, x.size() - 1);
    double frac = pos - double(lo);
    return x[lo] * (1.0 - frac) + x[hi] * frac;
}

} // namespace

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

MonteCarloResult monte_carlo(const SolverConfig& cfg, const SimState& initial,
                             double t_end, int M, Reduce reduce, int threads) {
    if (M < 2) throw std::invalid_argument("monte_carlo: M must be >= 2");

    const std::vector<std::uint64_t> obs = observation_steps(cfg, initial.t, t_end);
    const std::size_t nobs = obs.size();

    std::vector<std::vector<double>> samples(std::size_t(M),
                                             std::vector<double>(nobs, 0.0));
    std::vector<char> ok(std::size_t(M), 0);
    std::atomic<int> next{0};
    std::atomic<int> blowups{0};

    auto value_of = [reduce](const RealField& v) {
        return (reduce == Reduce::mean_X) ? x_functional(v) : l2sq(v);
    };

    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= M) return;
            SolverConfig run_cfg = cfg;
            run_cfg.seed = cfg.seed + std::uint64_t(i);
            std::vector<double>& row = samples[std::size_t(i)];
            std::size_t cursor = 0;
            std::uint64_t base = initial.step;
            try {
                if (obs[0] == 0) row[cursor++] = value_of(initial.v);
                auto observe = [&](const SimState&, const SimState& after,
                                   const NoiseIncrement&) {
                    if (cursor < nobs && after.step - base == obs[cursor])
                        row[cursor++] = value_of(after.v);
                };
                simulate(run_cfg, initial, t_end, observe);
                ok[std::size_t(i)] = 1;
            } catch (const BlowUpError&) {
                blowups.fetch_add(1);
            }
        }
    };

    int nthreads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, M));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    MonteCarloResult res;
    res.reduce = reduce;
    res.runs = M;
    res.blowups = blowups.load();
    res.rows.resize(nobs);

    std::vector<double> col;
    for (std::size_t j = 0; j < nobs; ++j) {
        StatRow& row = res.rows[j];
        row.t = initial.t + double(obs[j]) * cfg.dt;
        col.clear();
        for (int i = 0; i < M; ++i)
            if (ok[std::size_t(i)]) col.push_back(samples[std::size_t(i)][j]);
        row.samples = int(col.size());
        if (col.empty()) continue;

        row.mean = pairwise_sum(col.data(), col.size()) / double(col.size());
        if (col.size() > 1) {
            std::vector<double> dev(col.size());
            for (std::size_t i = 0; i < col.size(); ++i) {
                double d = col[i] - row.mean;
                dev[i] = d * d;
            }
            row.variance = pairwise_sum(dev.data(), dev.size()) / double(col.size() - 1);
            row.std_error = std::sqrt(row.variance / double(col.size()));
        }
        std::sort(col.begin(), col.end());
        row.q25 = quantile_of_sorted(col, 0.25);
        row.median = quantile_of_sorted(col, 0.5);
        row.q75 = quantile_of_sorted(col, 0.75);
    }
    return res;
}

RealField continuity_perturbation(const GridSpec& g, std::uint64_t key) {
    SpectralField F(g, 2);
    std::uint64_t channel = 0;
    for (int kx = 0; kx <= 2; ++kx)
        for (int ky = -2; ky <= 2; ++ky)
            for (int kz = -2; kz <= 2; ++kz) {
                if (kx == 0 && (ky < 0 || (ky == 0 && kz < 0))) continue; // one per +-k pair
                if (kx == 0 && ky == 0 && kz == 0) continue;              // keep zero mean
                if (kx * kx + ky * ky + kz * kz > 4) continue;
                for (int c = 0; c < 2; ++c) {
                    double re = gaussian(key, 0, channel++);
                    double im = gaussian(key, 0, channel++);
                    F.mode(c, kx, ky, kz) = {re, im};
                    F.mode(c, -kx, -ky, -kz) = {re, -im};
                }
            }
    dealias_in_place(F); // drops any band mode that landed on a Nyquist plane
    hydrostatic_project_spectral(F);
    RealField f = to_physical(F);
    double norm = std::sqrt(l2sq(f));
    if (norm == 0.0) throw std::logic_error("continuity_perturbation: empty band");
    for (double& v : f.values) v /= norm;
    return f;
}

double ContinuityResult::quantile(double u) const {
    return quantile_of_sorted(sup_diff, u);
}

ContinuityResult continuity_experiment(const SolverConfig& cfg, const SimState& initial,
                                       double t_end, double eps, int M, double besov_q,
                                       double besov_p) {
    if (eps < 0.0) throw std::invalid_argument("continuity_experiment: eps must be >= 0");
    if (M < 1) throw std::invalid_argument("continuity_experiment: M must be >= 1");

    const std::vector<std::uint64_t> obs = observation_steps(cfg, initial.t, t_end);
    const double s = 2.0 / besov_q;

    RealField pert = continuity_perturbation(cfg.grid);

    ContinuityResult res;
    res.pairs = M;
    for (int i = 0; i < M; ++i) {
        SolverConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + std::uint64_t(i);

        SimState a = initial;
        SimState b = initial;
        for (std::size_t j = 0; j < b.v.values.size(); ++j)
            b.v.values[j] += eps * pert.values[j];

        try {
            // Path A first, storing states at observation steps.
            std::vector<RealField> snaps;
            snaps.reserve(obs.size());
            std::size_t cursor = 0;
            std::uint64_t base = initial.step;
            if (obs[0] == 0) {
                snaps.push_back(a.v);
                ++cursor;
            }
            auto capture = [&](const SimState&, const SimState& after,
                               const NoiseIncrement&) {
                if (cursor < obs.size() && after.step - base == obs[cursor]) {
                    snaps.push_back(after.v);
                    ++cursor;
                }
            };
            simulate(run_cfg, a, t_end, capture);

            double sup = 0.0;
            cursor = 0;
            if (obs[0] == 0) {
                RealField diff = b.v;
                for (std::size_t j = 0; j < diff.values.size(); ++j)
                    diff.values[j] -= snaps[0].values[j];
                sup = besov_norm(diff, s, besov_q, 2.0, besov_p);
                ++cursor;
            }
            auto compare = [&](const SimState&, const SimState& after,
                               const NoiseIncrement&) {
                if (cursor < obs.size() && after.step - base == obs[cursor]) {
                    RealField diff = after.v;
                    for (std::size_t j = 0; j < diff.values.size(); ++j)
                        diff.values[j] -= snaps[cursor].values[j];
                    sup = std::max(sup, besov_norm(diff, s, besov_q, 2.0, besov_p));
                    ++cursor;
                }
            };
            simulate(run_cfg, b, t_end, compare);
            res.sup_diff.push_back(sup);
        } catch (const BlowUpError&) {
            ++res.blowups;
        }
    }
    std::sort(res.sup_diff.begin(), res.sup_diff.end());
    return res;
}

} // namespace hpe
