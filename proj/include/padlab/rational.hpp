#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "padlab/errors.hpp"

namespace padlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// exact p-adic valuation of a nonzero integer
inline long vp_int(Int x, const Int& p) {
    if (x == 0) throw error("vp_int: zero argument");
    if (x < 0) x = -x;
    long v = 0;
    // strip large chunks first, then single factors
    Int q = p * p * p * p;
    while (true) {
        Int quo, rem;
        boost::multiprecision::divide_qr(x, q, quo, rem);
        if (rem != 0) break;
        x = quo;
        v += 4;
    }
    while (true) {
        Int quo, rem;
        boost::multiprecision::divide_qr(x, p, quo, rem);
        if (rem != 0) break;
        x = quo;
        v += 1;
    }
    return v;
}

/// Extended rational: a value in Q ∪ {±∞}.  Used for p-adic valuations
/// and for valuation thresholds.
class Val {
public:
    static Val infinity() { return Val(Kind::PosInf, 0); }
    static Val neg_infinity() { return Val(Kind::NegInf, 0); }
    Val() : kind_(Kind::Finite), v_(0) {}
    Val(const Rational& v) : kind_(Kind::Finite), v_(v) {}  // NOLINT: implicit by design
    Val(long v) : kind_(Kind::Finite), v_(v) {}             // NOLINT
    Val(int v) : kind_(Kind::Finite), v_(v) {}              // NOLINT

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::PosInf; }
    bool is_neg_infinite() const { return kind_ == Kind::NegInf; }
    const Rational& finite() const {
        if (!is_finite()) throw error("Val: not finite");
        return v_;
    }

    friend bool operator==(const Val& a, const Val& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.v_ == b.v_);
    }
    friend bool operator<(const Val& a, const Val& b) {
        if (a.kind_ == Kind::NegInf) return b.kind_ != Kind::NegInf;
        if (a.kind_ == Kind::PosInf) return false;
        if (b.kind_ == Kind::PosInf) return true;
        if (b.kind_ == Kind::NegInf) return false;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Val& a, const Val& b) { return a == b || a < b; }
    friend bool operator>(const Val& a, const Val& b) { return b < a; }
    friend bool operator>=(const Val& a, const Val& b) { return b <= a; }
    friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }

    // +∞ + finite = +∞; −∞ + finite = −∞; +∞ + −∞ is an error
    friend Val operator+(const Val& a, const Val& b) {
        if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite) return Val(a.v_ + b.v_);
        if (a.kind_ == Kind::PosInf && b.kind_ == Kind::NegInf) throw error("Val: inf - inf");
        if (a.kind_ == Kind::NegInf && b.kind_ == Kind::PosInf) throw error("Val: inf - inf");
        if (a.kind_ != Kind::Finite) return a;
        return b;
    }

    friend Val min(const Val& a, const Val& b) { return a < b ? a : b; }
    friend Val max(const Val& a, const Val& b) { return a < b ? b : a; }

    std::string str() const {
        if (kind_ == Kind::PosInf) return "+inf";
        if (kind_ == Kind::NegInf) return "-inf";
        return v_.str();
    }

private:
    enum class Kind { Finite, PosInf, NegInf };
    Val(Kind k, const Rational& v) : kind_(k), v_(v) {}
    Kind kind_;
    Rational v_;
};

/// Exact p-adic valuation, normalized by vp(p) = 1; vp(0) = +∞.
inline Val vp(const Rational& x, const Int& p) {
    if (x == 0) return Val::infinity();
    long v = 0;
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    v += vp_int(num, p);
    v -= vp_int(den, p);
    return Val(Rational(v));
}

inline Val vp(const Int& x, const Int& p) { return vp(Rational(x), p); }

inline bool is_integer(const Rational& x) {
    return boost::multiprecision::denominator(x) == 1;
}

inline Int to_int(const Rational& x) {
    if (!is_integer(x)) throw error("to_int: not an integer: " + x.str());
    return boost::multiprecision::numerator(x);
}

inline long to_long(const Rational& x) {
    return static_cast<long>(to_int(x));
}

inline Int floor_int(const Rational& x) {
    Int q, r;
    boost::multiprecision::divide_qr(boost::multiprecision::numerator(x),
                                     boost::multiprecision::denominator(x), q, r);
    if (r != 0 && x < 0) --q;
    return q;
}

inline Int ceil_int(const Rational& x) { return -floor_int(-x); }

/// p-integrality: denominator coprime to p.
inline bool p_integral(const Rational& x, const Int& p) {
    return x == 0 || vp(x, p) >= Val(0);
}

inline Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw error("cannot parse rational: " + s);
    }
}

inline std::string rational_str(const Rational& x) { return x.str(); }

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace padlab
