#pragma once

#include "padlab/hecke.hpp"
#include "padlab/weights.hpp"

namespace padlab {

/// A pair of modules tied by a surjective generator morphism, with the
/// capacity bound 2*dim <= M on both sides.
class TransferInstance {
public:
    TransferInstance(SyntheticHeckeModule h, SyntheticHeckeModule h_prime, GeneratorMap phi,
                     Int capacity);

    const SyntheticHeckeModule& h() const { return h_; }
    const SyntheticHeckeModule& h_prime() const { return h_prime_; }
    const GeneratorMap& phi() const { return phi_; }
    const Int& capacity() const { return capacity_; }
    const Int& prime() const { return h_.prime(); }

    /// log_p(M), symbolic.
    LogLinear log_capacity() const { return LogLinear{0, 1, capacity_, prime()}; }

private:
    SyntheticHeckeModule h_, h_prime_;
    GeneratorMap phi_;
    Int capacity_;
};

/// Deterministic choice of a congruence level c in
/// [m - (M + 3/2) log_p M, m] whose window [c, c + log_p M] avoids every
/// valuation v_p(mu - theta), mu in E(H), and v_p(mu' - phi^v theta),
/// mu' in E(H').  Largest valid candidate among m and points just below
/// each obstruction window; all comparisons exact.
Rational find_gap_c(const TransferInstance& inst, const Character& theta, const Rational& m);

/// Certificate for the congruence-class separator e(theta).
struct SeparatorCertificate {
    Rational m;
    Rational c;
    // excluded eigencharacters with their witness generators (source side)
    std::vector<std::pair<Character, std::string>> excluded_h;
    std::vector<std::pair<Character, std::string>> excluded_h_prime;
    Rational xi;
    AlgebraElement projector;  // (1/xi) * prod of the witness factors
};

SeparatorCertificate build_e_theta(const TransferInstance& inst, const Character& theta,
                                   const Rational& m);

struct SeparatorReport {
    Rational c;
    Val xi_valuation;
    bool xi_bound_ok = false;       // v_p(xi) <= M m
    bool c_interval_ok = false;     // m - (M+3/2) log_p M <= c <= m
    bool window_ok = false;         // [c, c + log_p M] misses every obstruction
    long mult_h = 0, mult_h_prime = 0;
    Rational trace_h, trace_h_prime;
    bool trace_h_ok = false;        // tr(phi(e)|H)  ≡ m_H(theta, c)        mod p^log_p M
    bool trace_h_prime_ok = false;  // tr(e|H')      ≡ m_H'(phi^v theta, c) mod p^log_p M
    bool dichotomy_ok = false;      // per block: exactly 0, or diagonal ≡ 1
    std::string note;

    bool ok() const {
        return xi_bound_ok && c_interval_ok && window_ok && trace_h_ok && trace_h_prime_ok &&
               dichotomy_ok;
    }
};

SeparatorReport verify_e_theta(const TransferInstance& inst, const Character& theta,
                               const SeparatorCertificate& cert);

struct TransferOutcome {
    Rational c;
    bool bound_ok = false;  // c >= s/M - (M+2) log_p M
    long mult_h_direct = 0, mult_h_prime_direct = 0;
    long mult_h_trace = 0, mult_h_prime_trace = 0;
    bool routes_agree = false;
    bool multiplicities_equal = false;
    bool hypothesis_ok = false;  // probe congruences at level s
    std::vector<std::pair<Character, Character>> matching;
    bool matching_complete = false;

    bool ok() const {
        return bound_ok && routes_agree && multiplicities_equal && hypothesis_ok &&
               matching_complete;
    }
};

/// The trace criterion: from tr(phi(T')|H) ≡ tr(T'|H') mod p^s (checked on
/// the probe set the argument actually uses) produce a level c with equal
/// reduced multiplicities, computed independently through traces and
/// through direct counting.  Requires M to be a power of p so all interval
/// arithmetic stays rational.
TransferOutcome transfer_exists(const TransferInstance& inst, const Character& theta,
                                const Rational& s);

struct FamilyOutcome {
    std::vector<Character> members;  // aligned with the weight list
    long pairs_checked = 0;
    long violations = 0;

    bool ok() const { return violations == 0; }
};

/// Inductive family construction: enumerate each weight class, at every
/// step attach to the previously placed weight of maximal congruence depth
/// (ties to the lowest index), and pick the first eigencharacter congruent
/// at level a*(depth+1)+b.  Afterwards verifies the family congruence on
/// every pair exhaustively.
FamilyOutcome build_family(const std::vector<Weight>& weights,
                           const std::vector<SyntheticHeckeModule>& modules,
                           const Character& theta0, size_t lambda0_index, const Rational& a_coef,
                           const LogLinear& b_coef);

}  // namespace padlab
