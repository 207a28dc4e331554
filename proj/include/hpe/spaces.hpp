// Anisotropic function-space norms on T^3 = T^2_{x,y} x T_z.
//
//   lebesgue_norm   L^{(q,zeta)}: L^zeta in z inside, L^q in (x,y) outside
//   bessel_norm     H^{s,(q,zeta)} = || (1-Lap)^{s/2} f ||_{L^{(q,zeta)}}
//   besov_norm      B^s_{(q,zeta),p} via smooth dyadic frequency blocks
//   holder_norm     C^gamma sampled over grid pairs (lower bound of the sup)
//
// Multi-component inputs and mode families are reduced through the
// pointwise Euclidean / l2 norm of differences, matching C^gamma(T^3; l2).

#pragma once

#include "hpe/fft.hpp"
#include "hpe/grid.hpp"

#include <vector>

namespace hpe {

double lebesgue_norm(const RealField& f, double q, double zeta);
double bessel_norm(const RealField& f, double s, double q, double zeta);

// p = infinity is admitted via p = std::numeric_limits<double>::infinity().
double besov_norm(const RealField& f, double s, double q, double zeta, double p);

// Value of the smooth dyadic multiplier of block j at lattice radius m;
// block -1 is the low block (weight 1 in the Besov sum).
double besov_block_weight(int j, double m);
int besov_block_count(const GridSpec& g);

// C^gamma norm sampled over all same-axis-line pairs plus 10*n^3 seeded
// random pairs; gamma must lie in (0,1).  The family overload differences
// every member field before the l2 reduction.
double holder_norm(const RealField& f, double gamma);
double holder_norm(const std::vector<RealField>& family, double gamma);

struct SpaceParams {
    double s = 0.0;   // smoothness
    double q = 2.0;   // horizontal integrability
    double zeta = 2.0; // vertical integrability
    double p = 2.0;   // Besov fine index (ignored for Bessel scales)
};

// Sobolev-type embedding src -> dst on the torus: integrabilities may only
// go up, the fine index may only go up, and the smoothness surplus
// s - 2/q - 1/zeta must not increase.
bool verify_embedding(const SpaceParams& src, const SpaceParams& dst);

} // namespace hpe
