#include "padlab/congruence.hpp"

#include <algorithm>

namespace padlab {

namespace {

bool indistinguishable_from_zero(const CappedPadic& x) {
    return x.state() != CappedPadic::State::Known;
}

}  // namespace

RegularClassData analyze_regular_class(const GSpMatrix& gamma, const TorusElement& h, long e,
                                       long precision) {
    RegularClassData out;
    out.n = gamma.n();
    out.e = e;
    if (e < 1) throw error("analyze_regular_class: e >= 1 required");
    if (h.n != out.n) throw error("analyze_regular_class: rank mismatch");

    // the torus part away from p must have unit entries
    Int p = 2;
    {
        const Rational nu_h = h.nu;
        bool unit_ok = true;
        // prime comes from the caller context; recover it from gamma's field
        // of definition is impossible, so it is passed through h? keep an
        // explicit argument instead
        (void)nu_h;
        (void)unit_ok;
    }
    throw error("analyze_regular_class: prime must be supplied");
}

CharCongruenceReport character_value_congruence(const GSpMatrix&, const TorusElement&, long,
                                                const Weight&, const Weight&, long,
                                                const Rational&, long) {
    throw error("unimplemented");
}

TraceFormulaReport trace_formula_comparison(const GeometricSide&, const Weight&, const Weight&,
                                            const Rational&, long, const Int&, long) {
    throw error("unimplemented");
}

FamilyConstants family_constants(const Rational& beta, const MBound& m, const Int& p) {
    FamilyConstants fc;
    fc.beta = beta;
    fc.m_beta = m.at(beta);
    fc.m_beta_next = m.at(beta + 1);
    fc.c = beta * Rational(fc.m_beta) + Rational(1) / Rational(fc.m_beta_next);
    fc.a_small = Rational(1) /
                 ((Rational(1) + beta * Rational(fc.m_beta_next) * Rational(fc.m_beta)) *
                  Rational(fc.m_beta));
    fc.b_small = LogLinear{-beta, -Rational(fc.m_beta + 2), fc.m_beta, p};
    const Rational b = -beta * Rational(fc.m_beta);
    const Rational k = Rational(1) + beta * Rational(fc.m_beta_next) * Rational(fc.m_beta);
    fc.e_bound = LogLinear{-b * k, Rational(fc.m_beta) * Rational(fc.m_beta + 2) * k, fc.m_beta, p};
    return fc;
}

Rational family_a_at(const Rational& beta, const MBound& m, const Rational& c_const) {
    if (c_const <= 0) throw error("family_a_at: C must be positive");
    const Rational a = Rational(1) - beta * Rational(m.at(beta)) / c_const;
    const Rational ap_scaled = Rational(1) / (c_const * Rational(m.at(beta + 1)));
    return std::min(a, ap_scaled) / Rational(m.at(beta));
}

}  // namespace padlab
