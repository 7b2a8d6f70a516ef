#pragma once

#include <map>
#include <vector>

#include "padlab/padic.hpp"
#include "padlab/symplectic.hpp"

namespace padlab {

/// Character of the similitude torus: eps-coefficients plus a power of the
/// multiplier, lambda(diag(a, nu/a)) = prod a_i^eps_i * nu^central.
struct Weight {
    long n = 1;
    std::vector<long> eps;  // size n
    long central = 0;

    Weight() = default;
    Weight(long n_, std::vector<long> eps_, long central_ = 0)
        : n(n_), eps(std::move(eps_)), central(central_) {
        if (static_cast<long>(eps.size()) != n) throw error("Weight: wrong coefficient count");
    }

    friend Weight operator+(const Weight& a, const Weight& b);
    friend Weight operator-(const Weight& a, const Weight& b);
    friend Weight operator*(const Weight& a, long s);
    bool operator==(const Weight&) const = default;

    Rational eval(const TorusElement& t) const;
    CappedPadic eval(const std::vector<CappedPadic>& alpha, const CappedPadic& nu) const;

    std::string str() const;
};

/// Weight attached to a root (the extension trivial on the center).
Weight root_weight(const Root& r, long n);

/// max m with lambda - mu in p^m X(T); +inf when equal.
Val vp_weight(const Weight& lambda, const Weight& mu, const Int& p);

/// lambda ≡ mu mod (p-1) X(T)
bool same_weight_class(const Weight& lambda, const Weight& mu, const Int& p);

/// lambda ≡ mu mod (p-1) p^m X(T)
bool weight_congruent(const Weight& lambda, const Weight& mu, const Int& p, long m);

/// Depth of congruence within a class: the largest m with
/// lambda ≡ mu mod (p-1)p^m X(T); requires same_weight_class.
Val weight_class_depth(const Weight& lambda, const Weight& mu, const Int& p);

/// <lambda, alpha> = lambda(coroot) for a simple root alpha.
long simple_pairing(const Weight& lambda, const Root& alpha);

bool is_dominant(const Weight& lambda);

/// Half sum of the table-positive roots (central exponent normalized to 0;
/// the dot action below is insensitive to that choice).
Weight rho(long n);

/// Signed permutation: i -> perm[i] with sign[i], acting on the torus by
/// a_i -> a_{sigma(i)} or nu / a_{sigma(i)}.
struct WeylElement {
    std::vector<long> perm;  // 0-based images
    std::vector<int> sign;   // +1 or -1

    long rank() const { return static_cast<long>(perm.size()); }
    Weight apply(const Weight& lambda) const;
    bool is_identity() const;
    bool operator==(const WeylElement&) const = default;
};

std::vector<WeylElement> weyl_group(long n);  // 2^n n! elements, n <= 4

/// Number of table-positive roots mapped to negative roots.
long weyl_length(const WeylElement& w, long n);

/// w . lambda = w(lambda + rho) - rho
Weight dot_action(const WeylElement& w, const Weight& lambda);

/// For w != 1 and dominant lambda: the coefficients c_alpha >= 0 over the
/// simple roots with w.lambda = lambda - sum c_alpha alpha, together with
/// the index of a witness alpha_0 satisfying c >= <lambda, alpha_0>/2.
struct ReflectionDefect {
    std::vector<long> coeffs;  // aligned with simple_roots(n)
    long witness = -1;
};
ReflectionDefect lemma_coeffs(const WeylElement& w, const Weight& lambda);

/// Regular semisimple torus point with capped-precision coordinates.
struct RegularTorusPoint {
    long n = 1;
    std::vector<CappedPadic> xi;  // first n coordinates
    CappedPadic nu;

    Val root_valuation(const Root& r) const;
    bool is_regular() const;  // v_p(alpha(xi)) != 0 for every root
    RegularTorusPoint transformed(const WeylElement& w) const;
};

/// Trace of the irreducible highest-weight representation at the class of
/// the regular point, by the Weyl character formula.  Throws not_regular
/// when a root value has valuation 0 (the denominator could vanish).
CappedPadic weyl_char_value(const Weight& lambda, const RegularTorusPoint& xi);

/// Exact-rational variant at a rational torus point with alpha(t) != 1 for
/// all roots.
Rational weyl_char_value_exact(const Weight& lambda, const TorusElement& t);

}  // namespace padlab
