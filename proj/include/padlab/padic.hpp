#pragma once

#include <cstdlib>
#include <utility>

#include "padlab/logexpr.hpp"
#include "padlab/rational.hpp"

namespace padlab {

// Working precision protocol: start at 64 digits, retry with doubled N on
// insufficient_precision, hard cap 4096 (overridable via PADLAB_PRECISION_CAP).
inline long default_precision() { return 64; }

inline long precision_cap() {
    if (const char* env = std::getenv("PADLAB_PRECISION_CAP")) {
        const long v = std::atol(env);
        if (v > 0) return v;
    }
    return 4096;
}

/// Run op(N) with N = default, doubling on insufficient_precision up to the cap.
template <typename F>
auto with_precision_retry(F&& op) {
    long n = default_precision();
    const long cap = precision_cap();
    while (true) {
        try {
            return op(n);
        } catch (const insufficient_precision&) {
            if (n >= cap) throw;
            n = std::min(cap, n * 2);
        }
    }
}

/// A p-adic scalar with tracked precision.
///
/// Three states:
///   - exact zero (valuation +∞),
///   - known: x = p^v * u with u a unit residue known modulo p^N,
///   - bounded: only v_p(x) >= bound is known (produced by cancellation).
///
/// Arithmetic never reports more precision than the inputs justify, and a
/// valuation query on a bounded value raises insufficient_precision, so no
/// congruence verdict can silently go wrong.
class CappedPadic {
public:
    enum class State { Zero, Known, Bounded };

    CappedPadic() : state_(State::Zero), p_(2) {}

    static CappedPadic zero(const Int& p) {
        CappedPadic x;
        x.p_ = p;
        return x;
    }

    static CappedPadic from_unit(const Int& p, const Rational& valuation, Int unit, long prec) {
        if (prec < 1) throw error("CappedPadic: precision must be >= 1");
        CappedPadic x;
        x.state_ = State::Known;
        x.p_ = p;
        x.val_ = valuation;
        x.prec_ = prec;
        const Int mod = pow_int(p, prec);
        unit %= mod;
        if (unit < 0) unit += mod;
        if (unit % p == 0) throw error("CappedPadic: unit not invertible mod p");
        x.unit_ = unit;
        return x;
    }

    static CappedPadic bounded_below(const Int& p, const Rational& bound) {
        CappedPadic x;
        x.state_ = State::Bounded;
        x.p_ = p;
        x.val_ = bound;
        return x;
    }

    /// Exact embedding of a rational at precision N.
    static CappedPadic embed(const Rational& x, const Int& p, long prec) {
        if (x == 0) return zero(p);
        Int num = boost::multiprecision::numerator(x);
        Int den = boost::multiprecision::denominator(x);
        const long va = vp_int(num, p);
        const long vb = vp_int(den, p);
        num /= pow_int(p, va);
        den /= pow_int(p, vb);
        const Int mod = pow_int(p, prec);
        Int u = (num % mod) * inv_mod(den % mod, mod, p) % mod;
        if (u < 0) u += mod;
        return from_unit(p, Rational(va - vb), u, prec);
    }

    const Int& prime() const { return p_; }
    State state() const { return state_; }
    bool is_exact_zero() const { return state_ == State::Zero; }

    /// Exact valuation; throws insufficient_precision for bounded values.
    Val valuation() const {
        switch (state_) {
            case State::Zero: return Val::infinity();
            case State::Known: return Val(val_);
            default:
                throw insufficient_precision("valuation known only to be >= " + val_.str());
        }
    }

    /// Always-available lower bound on the valuation.
    Val valuation_lower_bound() const {
        return state_ == State::Zero ? Val::infinity() : Val(val_);
    }

    /// Decide v_p(x) >= t; throws when undecidable at current precision.
    bool valuation_at_least(const LogLinear& t) const {
        if (state_ == State::Zero) return true;
        if (state_ == State::Known) return geq(Val(val_), t);
        if (geq(Val(val_), t)) return true;
        throw insufficient_precision("need v_p >= " + t.str() + ", only >= " + val_.str() +
                                     " is known");
    }
    bool valuation_at_least(const Rational& t) const {
        return valuation_at_least(LogLinear::rational(t));
    }

    long precision() const {
        if (state_ != State::Known) throw error("CappedPadic: no unit precision");
        return prec_;
    }
    const Int& unit() const {
        if (state_ != State::Known) throw error("CappedPadic: no unit");
        return unit_;
    }

    CappedPadic operator-() const {
        if (state_ != State::Known) return *this;
        const Int mod = pow_int(p_, prec_);
        return from_unit(p_, val_, mod - unit_, prec_);
    }

    friend CappedPadic operator+(const CappedPadic& a, const CappedPadic& b) {
        a.check_same(b);
        if (a.state_ == State::Zero) return b;
        if (b.state_ == State::Zero) return a;
        // every non-zero state carries "known modulo p^K" with
        // K = val + prec (Known) or K = bound (Bounded)
        const Rational Ka = a.known_modulus(), Kb = b.known_modulus();
        const Rational K = Ka < Kb ? Ka : Kb;
        if (a.state_ == State::Bounded && b.state_ == State::Bounded)
            return bounded_below(a.p_, K < a.val_ ? (K < b.val_ ? K : b.val_) : a.val_);
        // residue of the sum modulo p^K
        const Rational vmin =
            (a.state_ == State::Known && (b.state_ != State::Known || a.val_ <= b.val_))
                ? a.val_
                : b.val_;
        if (K <= vmin) {
            const Rational bound = a.low_val() < b.low_val() ? a.low_val() : b.low_val();
            return bounded_below(a.p_, bound);
        }
        const Rational width = K - vmin;
        if (!is_integer(width))
            throw error("CappedPadic: non-integral valuation gap in addition");
        const long w = to_long(width);
        const Int mod = pow_int(a.p_, w);
        Int r = 0;
        if (a.state_ == State::Known) r += a.shifted_residue(vmin, w);
        if (b.state_ == State::Known) r += b.shifted_residue(vmin, w);
        r %= mod;
        if (r < 0) r += mod;
        if (r == 0) return bounded_below(a.p_, K);
        const long k = vp_int(r, a.p_);
        if (k >= w) throw error("CappedPadic: internal residue error");
        return from_unit(a.p_, vmin + k, r / pow_int(a.p_, k), w - k);
    }

    friend CappedPadic operator-(const CappedPadic& a, const CappedPadic& b) { return a + (-b); }

    friend CappedPadic operator*(const CappedPadic& a, const CappedPadic& b) {
        a.check_same(b);
        if (a.state_ == State::Zero || b.state_ == State::Zero) return zero(a.p_);
        if (a.state_ == State::Bounded || b.state_ == State::Bounded)
            return bounded_below(a.p_, a.low_val() + b.low_val());
        const long prec = std::min(a.prec_, b.prec_);
        const Int mod = pow_int(a.p_, prec);
        return from_unit(a.p_, a.val_ + b.val_, a.unit_ * b.unit_ % mod, prec);
    }

    CappedPadic inverse() const {
        if (state_ != State::Known)
            throw state_ == State::Zero ? error("CappedPadic: division by zero")
                                        : error("CappedPadic: division by unresolved value");
        const Int mod = pow_int(p_, prec_);
        return from_unit(p_, -val_, inv_mod(unit_, mod, p_), prec_);
    }

    friend CappedPadic operator/(const CappedPadic& a, const CappedPadic& b) {
        return a * b.inverse();
    }

    CappedPadic pow(long e) const {
        if (state_ == State::Zero) {
            if (e <= 0) throw error("CappedPadic: 0^e, e <= 0");
            return *this;
        }
        if (state_ == State::Bounded) {
            if (e < 0) throw error("CappedPadic: negative power of unresolved value");
            return bounded_below(p_, val_ * e);
        }
        const bool neg = e < 0;
        const unsigned long k = static_cast<unsigned long>(neg ? -e : e);
        const Int mod = pow_int(p_, prec_);
        Int u = 1, b = unit_;
        unsigned long t = k;
        while (t) {
            if (t & 1) u = u * b % mod;
            b = b * b % mod;
            t >>= 1;
        }
        CappedPadic r = from_unit(p_, val_ * e, neg ? inv_mod(u, mod, p_) : u, prec_);
        return r;
    }

    /// x ≡ y (mod p^t) in the sense v_p(x−y) >= t, exact or raising.
    friend bool congruent(const CappedPadic& a, const CappedPadic& b, const LogLinear& t) {
        return (a - b).valuation_at_least(t);
    }

    std::string str() const {
        switch (state_) {
            case State::Zero: return "0";
            case State::Bounded: return "O(p^" + val_.str() + ")";
            default:
                return unit_.str() + "*p^" + val_.str() + " + O(p^" + (val_ + prec_).str() + ")";
        }
    }

private:
    void check_same(const CappedPadic& o) const {
        if (p_ != o.p_) throw error("CappedPadic: mixed primes");
    }
    Rational known_modulus() const {
        return state_ == State::Known ? val_ + prec_ : val_;
    }
    Rational low_val() const { return val_; }
    // residue of p^(val-base) * unit modulo p^w (requires val-base integral >= 0)
    Int shifted_residue(const Rational& base, long w) const {
        const Rational d = val_ - base;
        if (!is_integer(d) || d < 0) throw error("CappedPadic: bad alignment");
        const long k = to_long(d);
        if (k >= w) return 0;
        return unit_ % pow_int(p_, w - k) * pow_int(p_, k);
    }

    static Int inv_mod(Int a, const Int& mod, const Int& p) {
        a %= mod;
        if (a < 0) a += mod;
        if (a % p == 0) throw error("CappedPadic: not invertible");
        // extended euclid
        Int t = 0, newt = 1, r = mod, newr = a;
        while (newr != 0) {
            const Int q = r / newr;
            t -= q * newt;
            std::swap(t, newt);
            r -= q * newr;
            std::swap(r, newr);
        }
        t %= mod;
        if (t < 0) t += mod;
        return t;
    }

    State state_;
    Int p_;
    Rational val_;  // valuation (Known) or lower bound (Bounded)
    Int unit_;      // unit residue, Known only
    long prec_ = 0;
};

}  // namespace padlab
