// Exact admissibility checks and critical exponents for the well-posedness
// parameter space: time integrability p, horizontal integrability q,
// smoothness offset delta, and noise Hoelder regularity gamma.  Everything
// here is rational arithmetic; no floats sneak in.

#pragma once

#include "hpe/rational.hpp"

#include <string>
#include <vector>

namespace hpe {

struct ParamSet {
    Rational p{2};
    Rational q{2};
    Rational delta{0};
    Rational gamma{1};

    // Basic range checks (p,q >= 2, delta in [0,1), gamma > 0); violations
    // are parameter errors, not inadmissibility.
    void validate() const;
};

struct AdmissibilityResult {
    bool admissible = false;
    std::vector<std::string> reasons; // empty iff admissible
};

// Either (p = q = 2, delta = 0) or delta in (0,1/2) with
// q in (2/(2-delta), 2/(1-delta)) and 1/p + 1/q + delta/2 <= 1.
// In both regimes the noise must satisfy gamma > 1 - delta.
AdmissibilityResult check_admissibility(const ParamSet& ps);

struct ExponentReport {
    Rational alpha_c;     // critical time weight p*(1 - 1/q - delta/2) - 1
    Rational beta;        // nonlinearity exponent
    Rational trace;       // trace-space smoothness 2 - delta - 2(1+alpha_c)/p
    Rational two_over_q;  // equals trace; kept as a cross-check
    Rational serrin_mu0;  // 2/q + 2/p
};

// Throws std::domain_error when the parameters are inadmissible.
ExponentReport critical_exponents(const ParamSet& ps);

// mu0 for an explicit Serrin pair (p0, q0).
Rational serrin_mu0(const Rational& p0, const Rational& q0);

} // namespace hpe
