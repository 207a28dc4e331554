#include "hpe/exponents.hpp"

#include <stdexcept>

namespace hpe {

void ParamSet::validate() const {
    if (p < Rational(2)) throw std::invalid_argument("ParamSet: p must be >= 2");
    if (q < Rational(2)) throw std::invalid_argument("ParamSet: q must be >= 2");
    if (delta < Rational(0) || delta >= Rational(1))
        throw std::invalid_argument("ParamSet: delta must lie in [0,1)");
    if (gamma <= Rational(0)) throw std::invalid_argument("ParamSet: gamma must be positive");
}

AdmissibilityResult check_admissibility(const ParamSet& ps) {
    ps.validate();
    AdmissibilityResult res;

    const Rational one(1), two(2);
    bool classical = (ps.p == two && ps.q == two && ps.delta == Rational(0));

    if (!classical) {
        if (!(ps.delta > Rational(0) && ps.delta < Rational(1, 2)))
            res.reasons.push_back("delta outside (0,1/2): delta = " + ps.delta.str());
        else {
            Rational lo = two / (two - ps.delta);
            Rational hi = two / (one - ps.delta);
            if (!(ps.q > lo && ps.q < hi))
                res.reasons.push_back("q outside (2/(2-delta), 2/(1-delta)) = (" + lo.str() +
                                      ", " + hi.str() + "): q = " + ps.q.str());
        }
        Rational budget = one / ps.p + one / ps.q + ps.delta / two;
        if (!(budget <= one))
            res.reasons.push_back("1/p + 1/q + delta/2 = " + budget.str() + " exceeds 1");
    }

    if (!(ps.gamma > one - ps.delta))
        res.reasons.push_back("gamma = " + ps.gamma.str() + " not above 1 - delta = " +
                              (one - ps.delta).str());

    res.admissible = res.reasons.empty();
    return res;
}

ExponentReport critical_exponents(const ParamSet& ps) {
    auto adm = check_admissibility(ps);
    if (!adm.admissible) {
        std::string what = "critical_exponents: inadmissible parameters";
        for (const auto& r : adm.reasons) what += "; " + r;
        throw std::domain_error(what);
    }

    const Rational one(1), two(2);
    ExponentReport rep;
    rep.alpha_c = ps.p * (one - one / ps.q - ps.delta / two) - one;

    // q < 2/delta picks the interpolation branch; delta = 0 always does.
    bool low_q = (ps.delta == Rational(0)) || (ps.q * ps.delta < two);
    rep.beta = low_q ? Rational(1, 2) + ps.delta / Rational(4) + one / (two * ps.q)
                     : Rational(1, 2) + ps.delta / two;

    rep.trace = two - ps.delta - two * (one + rep.alpha_c) / ps.p;
    rep.two_over_q = two / ps.q;
    if (!(rep.trace == rep.two_over_q))
        throw std::logic_error("critical_exponents: trace identity 2-delta-2(1+alpha_c)/p = 2/q failed");

    rep.serrin_mu0 = serrin_mu0(ps.p, ps.q);
    return rep;
}

Rational serrin_mu0(const Rational& p0, const Rational& q0) {
    Rational mu0 = Rational(2) / q0 + Rational(2) / p0;
    // -2/p0 + mu0 - 2/q0 = 0 by construction; keep the check anyway.
    if (!(mu0 - Rational(2) / p0 - Rational(2) / q0 == Rational(0)))
        throw std::logic_error("serrin_mu0: identity violated");
    return mu0;
}

} // namespace hpe
