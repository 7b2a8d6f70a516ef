#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padlab/matrix.hpp"
#include "padlab/rational.hpp"

namespace padlab {

/// Roots of the rank-n symplectic group, following the convention that
/// eps_i - eps_j is positive for i > j and the simple system is
/// {2*eps_1, eps_(i+1) - eps_i}.
struct Root {
    enum class Kind { EpsDiff, EpsSum, NegEpsSum, TwoEps, NegTwoEps };
    Kind kind;
    long i = 1, j = 1;  // 1-based; j unused for TwoEps/NegTwoEps

    bool positive() const {
        switch (kind) {
            case Kind::EpsDiff: return i > j;
            case Kind::EpsSum:
            case Kind::TwoEps: return true;
            default: return false;
        }
    }

    /// Exponents of the root as a character of the full torus
    /// diag(a_1..a_n, nu/a_1..nu/a_n): entries for a_1..a_n plus the nu power.
    /// Extension to the similitude torus is normalized to be trivial on the
    /// center.
    std::vector<long> eps_exponents(long n) const;
    long nu_exponent() const;

    std::string str() const;
    bool operator==(const Root&) const = default;
};

std::vector<Root> all_roots(long n);
std::vector<Root> positive_roots(long n);
/// Negative roots in the fixed enumeration order used for coset products:
/// first eps_i - eps_j (i < j) lexicographically, then -eps_i - eps_j
/// (i <= j) lexicographically (i = j giving -2 eps_i).
std::vector<Root> negative_roots(long n);
std::vector<Root> simple_roots(long n);

/// Number of simple negative roots summing to -alpha, for alpha negative.
long root_height(const Root& r);

/// Group element of the one-parameter subgroup attached to the root,
/// with the given parameter.
QMatrix root_group_element(const Root& r, long n, const Rational& t);
/// Lie algebra generator X_alpha from the root table.
QMatrix root_space_generator(const Root& r, long n);

/// Point of the maximal torus: diag(a_1..a_n, nu/a_1..nu/a_n).
struct TorusElement {
    long n = 1;
    std::vector<Rational> alpha;
    Rational nu = 1;

    QMatrix matrix() const;
    TorusElement inverse() const;
    TorusElement pow(long e) const;
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b);

    static TorusElement identity(long n);
};

/// diag(p, p^2, ..., p^n, 1, p^-1, ..., p^-(n-1)); every simple root takes
/// the value p on it.
TorusElement standard_plus_element(long n, const Int& p);

/// diag(p^((n-1)e), ..., p^0, p^(ne), ..., p^((2n-1)e)): the integral
/// rescaling of the -e-th power of the standard plus element.
TorusElement integral_shifted_power(long n, const Int& p, long e);

Rational root_value(const Root& r, const TorusElement& t);

/// Multiplier nu with g^t J g = nu J; throws not_symplectic otherwise.
Rational similitude(const QMatrix& g);

class GSpMatrix {
public:
    GSpMatrix() = default;
    /// Validates the similitude relation on construction.
    GSpMatrix(long n, QMatrix entries);

    long n() const { return n_; }
    const QMatrix& entries() const { return m_; }
    const Rational& multiplier() const { return nu_; }

    GSpMatrix inverse() const;  // nu^-1 J^-1 g^t J, no elimination needed
    friend GSpMatrix operator*(const GSpMatrix& a, const GSpMatrix& b);

private:
    long n_ = 0;
    QMatrix m_;
    Rational nu_ = 1;
};

/// Membership in the level subgroup: integral entries, unit multiplier,
/// and the positive-pattern entries (strictly lower part of the upper-left
/// block, all of the upper-right block) divisible by p.
/// Throws not_integral when an entry fails to be p-integral.
bool iwahori_member(const GSpMatrix& g, const Int& p);

/// v_p(alpha(s)) >= 0 for all simple roots alpha.
bool t_plus_member(const TorusElement& s, const Int& p);

/// Exponent k_alpha = -v_p(alpha(s)) per negative root, in enumeration order.
std::vector<long> coset_exponents(const TorusElement& s, const Int& p);

Int coset_count(const TorusElement& s, const Int& p);

/// Materialized double-coset representatives: products of the one-parameter
/// generators over the negative roots in enumeration order, parameters
/// running over 0..p^k_alpha - 1.  Refuses counts above the limit.
std::vector<GSpMatrix> coset_reps_Vs(const TorusElement& s, const Int& p,
                                     std::uint64_t limit = 200000);

/// Recover the parameters of a product of negative-root generators taken in
/// enumeration order.  Exact; throws if the matrix is not such a product.
std::vector<Rational> factor_unipotent(const QMatrix& x, long n);

/// Canonical coset parameters of a lower-unipotent x modulo the subgroup
/// s^-1 I s ∩ I: each parameter reduced into [0, p^k_alpha) by left
/// multiplications inside the subgroup, processed by ascending root height.
std::vector<Int> canonical_coset_tuple(const QMatrix& x, const TorusElement& s, const Int& p);

struct CosetEnumerationReport {
    Int expected;       // prod p^k_alpha
    Int enumerated;     // tuples whose product factored back to themselves
    bool injective;     // round-trip held for every tuple
    bool pairwise_distinct_mod_subgroup;  // only filled when all-pairs ran
    bool pairwise_checked;
};

/// Streamed exhaustive enumeration with an exact injectivity proof
/// (round-trip factorization per element).  When check_pairwise is set,
/// additionally verifies pairwise inequivalence modulo s^-1 I s ∩ I by the
/// entry-valuation criterion on all pairs.
CosetEnumerationReport enumerate_cosets_checked(const TorusElement& s, const Int& p,
                                                bool check_pairwise,
                                                std::uint64_t limit = 6000000);

struct HeckeProductReport {
    Int count_s1, count_s2, count_s1s2;
    bool multiplicative = false;      // |V_{s1 s2}| = |V_{s1}| |V_{s2}|
    bool semigroup_ok = false;        // Ad(s2^-1)(V_s1) has p-integral parameters
    bool set_identity_ok = false;     // V_{s1 s2} = Ad(s2^-1)(V_s1) V_s2 as coset sets
    bool spot_checks_ok = false;      // direct subgroup-membership confirmations
    std::string note;

    bool ok() const {
        return multiplicative && semigroup_ok && set_identity_ok && spot_checks_ok;
    }
};

/// Verifies the coset product law by exact enumeration and canonical forms.
HeckeProductReport hecke_product_check(const TorusElement& s1, const TorusElement& s2,
                                       const Int& p, std::uint64_t limit = 6000000);

/// Random word in the level subgroup: a product of one-parameter generators
/// (parameters in pZ for positive roots, in Z for negative roots) and
/// sign-flip torus units.  Deterministic in (n, p, word_length, seed);
/// multiplier 1, unit diagonal, Iwahori member by construction.
GSpMatrix sample_gamma(long n, const Int& p, long word_length, std::uint64_t seed);

std::string gsp_to_json(const GSpMatrix& g);
GSpMatrix gsp_from_json(const std::string& text);

}  // namespace padlab
