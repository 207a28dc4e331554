// Truncated Kraichnan ensembles: divergence-free trigonometric modes with
// spectral density E_alpha(k) = |k|^(-1-alpha), so each mode carries
// amplitude |k|^(-(1+alpha)/2 - (d-1)/2).  Cosine and sine modes come in
// +-k pairs indexed by the lexicographically dominating representative.
//
// The regularity report exposes the dichotomy of the model: Sobolev
// H^(alpha/2) partial sums diverge like log K while C^gamma sums converge
// for gamma < alpha/2.

#pragma once

#include "hpe/coeffs.hpp"
#include "hpe/grid.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace hpe {

enum class Parity { cosine, sine };

struct NoiseMode {
    std::array<int, 3> k{{0, 0, 0}};
    int ell = 1;                       // direction index, 1..d-1
    Parity parity = Parity::cosine;
    double amplitude = 0.0;
    std::array<double, 3> direction{{0.0, 0.0, 0.0}}; // unit, direction.k = 0
};

struct NoiseEnsemble {
    int d = 2;
    double alpha = 0.0;
    int kmax = 0;
    bool vertical_lift = false;
    std::vector<NoiseMode> modes;

    // Single spatially constant mode (k = 0); used by transport tests.
    static NoiseEnsemble constant(const std::array<double, 3>& direction,
                                  double amplitude);
};

// All modes with 0 < |k| <= kmax, ordered by (|k|^2, kx, ky, kz, ell,
// parity).  d = 2 ensembles live on the horizontal torus (kz = 0).
NoiseEnsemble build_kraichnan(int d, double alpha, int kmax);

// Marks a d = 2 ensemble as a z-independent field on T^3 with zero vertical
// component.  Idempotent.
NoiseEnsemble lift_horizontal(NoiseEnsemble e);

// Sample every mode on the grid; 2 components for an unlifted d = 2
// ensemble, 3 otherwise.
std::vector<RealField> evaluate_modes(const NoiseEnsemble& e, const GridSpec& g);

// sum_n sigma_n(x) sigma_n(x)^T (3x3, horizontal block only for d = 2).
MatrixField sigma_outer_sum(const NoiseEnsemble& e, const GridSpec& g);

// min over grid points of lambda_min(a(x) - 0.5 * sum_n sigma sigma^T(x)).
double parabolicity_margin(const NoiseEnsemble& e, const MatrixField& a);

struct RegularityReport {
    std::vector<int> K;
    std::vector<double> h_partial;       // sum (1+|k|^2)^(alpha/2) amp^2
    std::vector<double> c_gamma_partial; // sum (amp (2 pi |k|)^gamma)^2
    double gamma = 0.0;
    double h_slope = 0.0;     // fit of h_partial against log K
    double h_intercept = 0.0;
    double h_r2 = 0.0;
    std::vector<double> c_tail_ratios;   // successive increment ratios
};

RegularityReport regularity_report(int d, double alpha, const std::vector<int>& K_list,
                                   double gamma);

struct SpectrumReport {
    std::vector<double> shell_k;      // geometric mean |k| per dyadic shell
    std::vector<double> shell_energy; // shell sum of amp^2 / shell width
    double slope = 0.0;               // fit of log shell_energy vs log |k|; ~ -(1+alpha)
    double amplitude_slope = 0.0;     // fit of log amp vs log |k| per mode; -(d+alpha)/2
};

// Requires at least 3 dyadic shells, i.e. kmax >= 8.
SpectrumReport spectrum_slope(const NoiseEnsemble& e);

void save_ensemble(std::ostream& os, const NoiseEnsemble& e);
NoiseEnsemble load_ensemble(std::istream& is);

// Least-squares helpers shared by the reports.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace hpe
