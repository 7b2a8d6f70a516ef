#pragma once

#include "padlab/rational.hpp"

namespace padlab {

/// Exact three-way comparison of a rational v against q + r*log_p(M).
///
/// Clears denominators and compares big-integer powers of p and M; no
/// floating point enters any verdict.
inline int cmp_log_threshold(const Rational& v, const Rational& q, const Rational& r,
                             const Int& M, const Int& p) {
    if (M <= 0) throw error("cmp_log_threshold: M must be positive");
    if (p < 2) throw error("cmp_log_threshold: p must be >= 2");
    // v - q  vs  r*log_p M   <=>   p^(a) vs M^(b),  a=(v-q)d, b=rd
    const Rational lhs = v - q;
    const Int d = boost::multiprecision::lcm(boost::multiprecision::denominator(lhs),
                                             boost::multiprecision::denominator(r));
    const Int a = boost::multiprecision::numerator(lhs) *
                  (d / boost::multiprecision::denominator(lhs));
    const Int b = boost::multiprecision::numerator(r) *
                  (d / boost::multiprecision::denominator(r));
    // p^a >= M^b  <=>  p^(a+) M^(b-) >= p^(a-) M^(b+)
    const auto upos = [](const Int& x) -> unsigned long {
        return x > 0 ? static_cast<unsigned long>(x) : 0ul;
    };
    const Int left = pow_int(p, upos(a)) * pow_int(M, upos(-b));
    const Int right = pow_int(p, upos(-a)) * pow_int(M, upos(b));
    return left < right ? -1 : (left == right ? 0 : 1);
}

/// The artifact-level comparison v >= q + r*log_p(M).
inline bool vp_compare_log_threshold(const Rational& v, const Rational& q, const Rational& r,
                                     const Int& M, const Int& p) {
    return cmp_log_threshold(v, q, r, M, p) >= 0;
}

/// A threshold of the form q + r*log_p(M), kept symbolic so comparisons
/// stay exact even when log_p(M) is irrational.
struct LogLinear {
    Rational q;
    Rational r;
    Int M = 1;  // r = 0 or M = 1 means a plain rational
    Int p = 2;

    static LogLinear rational(const Rational& q0) { return LogLinear{q0, 0, 1, 2}; }

    bool is_rational() const { return r == 0 || M == 1; }

    LogLinear operator+(const Rational& s) const { return LogLinear{q + s, r, M, p}; }
    LogLinear operator-(const Rational& s) const { return LogLinear{q - s, r, M, p}; }
    LogLinear scaled(const Rational& s) const { return LogLinear{q * s, r * s, M, p}; }

    LogLinear operator+(const LogLinear& o) const {
        if (is_rational()) return LogLinear{q + o.q, o.r, o.M, o.p};
        if (o.is_rational()) return LogLinear{q + o.q, r, M, p};
        if (M != o.M || p != o.p) throw error("LogLinear: mixed log bases");
        return LogLinear{q + o.q, r + o.r, M, p};
    }

    std::string str() const {
        if (is_rational()) return q.str();
        return q.str() + " + " + r.str() + "*log_" + p.str() + "(" + M.str() + ")";
    }
};

inline int cmp(const Val& v, const LogLinear& t) {
    if (v.is_infinite()) return 1;
    if (v.is_neg_infinite()) return -1;
    if (t.is_rational()) {
        const Rational& x = v.finite();
        return x < t.q ? -1 : (x == t.q ? 0 : 1);
    }
    return cmp_log_threshold(v.finite(), t.q, t.r, t.M, t.p);
}

inline bool geq(const Val& v, const LogLinear& t) { return cmp(v, t) >= 0; }

inline int cmp(const LogLinear& a, const LogLinear& b) {
    // a.q + a.r*l  vs  b.q + b.r*l  <=>  (a.q - b.q) vs (b.r - a.r)*l
    if (a.is_rational() && b.is_rational())
        return a.q < b.q ? -1 : (a.q == b.q ? 0 : 1);
    const LogLinear& ctx = a.is_rational() ? b : a;
    if (!a.is_rational() && !b.is_rational() && (a.M != b.M || a.p != b.p))
        throw error("LogLinear: mixed log bases");
    return cmp_log_threshold(a.q - b.q, 0, b.r - a.r, ctx.M, ctx.p);
}

/// Smallest dyadic rational with denominator 2^bits that is >= log_p(M).
/// Exact binary search via integer power comparison; used only where a
/// rational upper bound on an irrational log is needed (gap search for
/// M not a power of p).
inline Rational log_upper_bound(const Int& M, const Int& p, unsigned bits = 24) {
    if (M <= 1) return 0;
    // bracket [lo, hi] with integer endpoints
    long hi = 1;
    while (pow_int(p, static_cast<unsigned long>(hi)) < M) ++hi;
    Rational lo = hi - 1, up = hi;
    const Rational half(1, 2);
    Rational step(1, 2);
    for (unsigned i = 0; i < bits; ++i) {
        const Rational mid = lo + (up - lo) * half;
        // mid >= log_p M ?
        if (cmp_log_threshold(mid, 0, 1, M, p) >= 0)
            up = mid;
        else
            lo = mid;
    }
    return up;
}

/// log_p(M) as an exact rational when M is a power of p, otherwise empty.
inline std::optional<Rational> exact_log(const Int& M, const Int& p) {
    Int m = M;
    long k = 0;
    while (m > 1 && m % p == 0) {
        m /= p;
        ++k;
    }
    if (m == 1) return Rational(k);
    return std::nullopt;
}

}  // namespace padlab
