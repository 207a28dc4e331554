// Per-step energy ledger and blow-up monitors.  The ledger tracks the
// discrete L2 balance
//
//   ||v_{n+1}||^2 - ||v_n||^2 + 2 dt (a : grad v, grad v)
//     - dt sum_n ||P (sigma_n . grad) v||^2 - 2 sum_n (v, P D_n) dW^n
//
// whose residual is O(dt^2) pathwise, the energy functionals
// X_t = ||dz v||^2 + ||vtilde||_{L4}^4 and the Y_t integrand, and the
// Serrin integrand ||v||^{p0} in H^{mu0,(q0,2)} with mu0 = 2/q0 + 2/p0.
// Time integrals use the left-endpoint rectangle rule, matching the order
// of the Euler-Maruyama scheme.

#pragma once

#include "hpe/dynamics.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace hpe {

struct DiagnosticsRecord {
    double t = 0.0;
    double l2_v = 0.0;                      // ||v||_{L2}^2
    double h1_grad = 0.0;                   // ||grad v||_{L2}^2
    double X_t = 0.0;                       // ||dz v||^2 + ||vtilde||_{L4}^4
    double Y_t_integrand = 0.0;             // ||dz v||_{H1}^2 + || |vtilde| |grad vtilde| ||^2
    double serrin_integrand = 0.0;          // ||v||_{H^{mu0,(q0,2)}}^{p0}
    double incompressibility_residual = 0.0;
    double energy_balance_residual = 0.0;   // accumulated since the previous record
    std::optional<double> l2_theta;         // ||theta||_{L2}^2
};

inline double serrin_mu0_real(double p0, double q0) { return 2.0 / q0 + 2.0 / p0; }

// Norm snapshot of a single state; the balance residual needs a step pair
// and is left at 0.
DiagnosticsRecord instantaneous_record(const SimState& s, double serrin_p0,
                                       double serrin_q0);

// Accumulates one record per diagnostics_stride steps (plus the initial
// state via start()).  Feed it to simulate through observer().
class EnergyLedger {
  public:
    explicit EnergyLedger(const SolverConfig& cfg);

    void start(const SimState& s0);
    void observe(const SimState& before, const SimState& after, const NoiseIncrement& inc);
    StepObserver observer();

    const std::vector<DiagnosticsRecord>& records() const { return records_; }
    std::vector<DiagnosticsRecord>& records() { return records_; }

  private:
    const SolverConfig& cfg_;
    std::vector<RealField> sigma_;   // evaluated transport modes
    std::vector<DiagnosticsRecord> records_;
    double pending_balance_ = 0.0;
    std::uint64_t steps_seen_ = 0;
};

struct SerrinResult {
    double integral = 0.0;
    bool tripped = false;
};

// Left-rule integral of serrin_integrand over time-ordered records.
// Throws std::invalid_argument on disordered times and std::logic_error if
// mu0 fails the -2/p0 + mu0 - 2/q0 = 0 identity.
SerrinResult serrin_monitor(const std::vector<DiagnosticsRecord>& records, double p0,
                            double q0, double threshold);

// accumulated = sum dt * t^a * value^p; a = 0 gives the plain integral.
struct WeightedTimeNorm {
    double a = 0.0;
    double p = 2.0;
    double accumulated = 0.0;

    void add(double t, double dt, double value);
};

// Header row then one record per line, 17 significant digits, fixed column
// order; the l2_theta column appears only when the records carry it.
void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records);

} // namespace hpe
