// Trajectory-level Monte Carlo: M independent runs with seeds seed+0 ..
// seed+M-1, reduced per observation time to mean/variance/standard error
// (or quantiles).  Aggregation is order independent: samples land in a
// preallocated per-run slot and means use a fixed pairwise reduction tree
// (recursive halving, leaves of 8).  Blow-ups are counted and excluded,
// never fatal.
//
// The continuity experiment runs paired trajectories driven by the same
// noise path from v0 and v0 + eps * perturbation and reports quantiles of
// sup_t || difference ||_{B^{2/q}_{(q,2),p}} over the pairs.

#pragma once

#include "hpe/dynamics.hpp"

#include <vector>

namespace hpe {

enum class Reduce { mean_l2, mean_X, quantiles };

struct StatRow {
    double t = 0.0;
    int samples = 0;
    double mean = 0.0;
    double variance = 0.0;   // unbiased
    double std_error = 0.0;  // sqrt(variance / samples)
    double q25 = 0.0, median = 0.0, q75 = 0.0;
};

struct MonteCarloResult {
    Reduce reduce = Reduce::mean_l2;
    std::vector<StatRow> rows;
    int runs = 0;
    int blowups = 0;

    double blowup_fraction() const { return runs ? double(blowups) / runs : 0.0; }
};

// mean_l2 reduces ||v||_{L2}^2, mean_X the functional X_t, quantiles the
// ||v||^2 distribution.  Observations land every diagnostics_stride steps
// plus the final time.  threads = 0 picks hardware_concurrency().
MonteCarloResult monte_carlo(const SolverConfig& cfg, const SimState& initial,
                             double t_end, int M, Reduce reduce, int threads = 0);

// Deterministic unit-norm admissible perturbation field (band |k| <= 2).
RealField continuity_perturbation(const GridSpec& g, std::uint64_t key = 0x70657274);

struct ContinuityResult {
    std::vector<double> sup_diff; // sorted ascending, one entry per surviving pair
    int pairs = 0;
    int blowups = 0;

    double quantile(double u) const;
    double median() const { return quantile(0.5); }
};

ContinuityResult continuity_experiment(const SolverConfig& cfg, const SimState& initial,
                                       double t_end, double eps, int M,
                                       double besov_q = 8.0 / 3.0, double besov_p = 4.0);

// Fixed reduction tree used by the statistics; exposed for tests.
double pairwise_sum(const double* x, std::size_t n);

} // namespace hpe
