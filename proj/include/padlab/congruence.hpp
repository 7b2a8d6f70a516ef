#pragma once

#include <map>

#include "padlab/slope.hpp"
#include "padlab/symplectic.hpp"
#include "padlab/weights.hpp"

namespace padlab {

/// Outcome of analyzing the class of (gamma * h * h_p^e)^-1: exact
/// coefficient valuations of the integral rescaling, its Newton polygon,
/// and the lifted diagonal representative with the expected valuation
/// profile (-e, -2e, ..., -ne, 0, e, ..., (n-1)e).
struct RegularClassData {
    long n = 1;
    Int p = 2;
    long e = 1;
    Poly<Rational> charpoly;  // of the integral rescaling
    std::vector<Val> coeff_valuations;
    bool valuation_pattern_ok = false;  // v_p(c_i) = e*i*(i-1)/2
    bool newton_slopes_ok = false;      // slopes {0, e, ..., (2n-1)e}, each simple
    RegularTorusPoint xi;
    bool profile_ok = false;            // simple-root valuations all equal -e
    bool pairing_ok = false;            // xi_i * xi_{n+i} matches the multiplier
    bool root_product_ok = false;       // product of lifted roots vs constant term
    std::string note;

    bool ok() const {
        return valuation_pattern_ok && newton_slopes_ok && profile_ok && pairing_ok &&
               root_product_ok;
    }
};

/// Requires h with unit entries at p and e >= 1.
RegularClassData analyze_regular_class(const GSpMatrix& gamma, const TorusElement& h, long e,
                                       const Int& p, long precision);

struct CharCongruenceReport {
    CappedPadic side_a, side_b;  // normalized character values at the two weights
    Val difference_lower_bound;
    Rational threshold;  // min(m+1, C e)
    bool congruence_ok = false;
    bool integrality_ok = false;  // both sides integral at p
    bool unit_fact_ok = false;    // lambda(h h_p^e xi) is a unit
};

/// lambda(h h_p^e) tr(Xi^-1 | L_lambda) against the same at lambda',
/// congruent weights of depth m, both pairings above 2C.
CharCongruenceReport character_value_congruence(const GSpMatrix& gamma, const TorusElement& h,
                                                long e, const Weight& lambda,
                                                const Weight& lambda_prime, long m,
                                                const Rational& c_const, const Int& p,
                                                long precision);

/// Synthetic geometric side: a unit torus part, a fixed power of the
/// standard plus element, integer class coefficients, and projector
/// coefficients b_e with declared valuation >= -e*beta over e in [L, tL].
struct GeometricSide {
    TorusElement h_unit;
    long f = 0;
    std::vector<std::pair<GSpMatrix, long>> classes;  // (gamma_i, c_i)
    std::map<long, Rational> b;                       // e -> b_e
    Rational beta;
};

struct TraceFormulaReport {
    CappedPadic side_a, side_b;
    Val difference_lower_bound;
    Rational box;  // (1 - beta M / C)(m+1) - beta M
    bool coefficient_bounds_ok = false;  // v_p(b_e) >= -e beta
    bool congruence_ok = false;
    bool termwise_ok = false;  // bound recomputed from per-term valuations
    std::vector<Val> term_lower_bounds;
};

TraceFormulaReport trace_formula_comparison(const GeometricSide& gs, const Weight& lambda,
                                            const Weight& lambda_prime, const Rational& c_const,
                                            long m, const Int& m_beta, long precision);

struct FamilyConstants {
    Rational beta;
    Int m_beta, m_beta_next;
    Rational c;          // beta M(beta) + 1/M(beta+1)
    Rational a_small;    // 1 / ((1 + beta M(beta+1) M(beta)) M(beta))
    LogLinear b_small;   // -beta - (M(beta)+2) log_p M(beta)
    LogLinear e_bound;   // the non-triviality threshold for m+1
};

FamilyConstants family_constants(const Rational& beta, const MBound& m, const Int& p);

/// The coefficient a as a function of a general C (for checking that the
/// canonical choice maximizes it).
Rational family_a_at(const Rational& beta, const MBound& m, const Rational& c_const);

}  // namespace padlab
