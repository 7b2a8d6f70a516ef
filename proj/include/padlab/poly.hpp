#pragma once

#include <algorithm>
#include <vector>

#include "padlab/padic.hpp"
#include "padlab/rational.hpp"

namespace padlab {

inline bool coeff_is_zero(const Rational& x) { return x == 0; }
inline bool coeff_is_zero(const CappedPadic& x) { return x.is_exact_zero(); }

/// Dense polynomial, coefficients indexed by degree.
template <typename T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero poly

    const T& operator[](size_t i) const { return c_[i]; }
    const std::vector<T>& coeffs() const { return c_; }

    T eval(const T& x) const {
        if (c_.empty()) throw error("Poly::eval on zero polynomial needs a zero of T");
        T acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + b * T(-1); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const T& s) {
        std::vector<T> r = a.c_;
        for (auto& x : r) x = x * s;
        return Poly(std::move(r));
    }

    Poly pow(unsigned long e) const {
        Poly r = constant(T(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

struct NewtonSegment {
    Rational slope;  // common valuation of the roots on this segment
    long length;     // number of such roots
    bool operator==(const NewtonSegment&) const = default;
};

/// Lower convex hull of the coefficient valuations, reported as root
/// valuations: slopes strictly increasing, lengths summing to
/// degree - zero_roots.  zero_roots counts the X-power dividing f.
struct NewtonPolygon {
    long zero_roots = 0;
    std::vector<NewtonSegment> segments;

    std::vector<Rational> root_valuations() const {
        std::vector<Rational> out;
        for (const auto& s : segments)
            for (long i = 0; i < s.length; ++i) out.push_back(s.slope);
        return out;
    }
};

namespace detail {

// hull over support points (index, valuation); returns root-valuation segments
inline NewtonPolygon hull_of_points(const std::vector<std::pair<long, Rational>>& pts,
                                    long degree) {
    NewtonPolygon np;
    if (pts.empty()) throw error("newton_polygon: zero polynomial");
    np.zero_roots = pts.front().first;
    if (pts.size() == 1) return np;  // monomial: no finite-slope segments
    // Andrew-style lower hull, points already sorted by index
    std::vector<std::pair<long, Rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below line a--pt
            const Rational lhs = (b.second - a.second) * (pt.first - a.first);
            const Rational rhs = (pt.second - a.second) * (b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        const Rational slope = (hull[i + 1].second - hull[i].second) /
                               Rational(hull[i + 1].first - hull[i].first);
        np.segments.push_back({-slope, hull[i + 1].first - hull[i].first});
    }
    std::reverse(np.segments.begin(), np.segments.end());  // increasing root valuation
    (void)degree;
    return np;
}

inline Rational hull_height_at(const std::vector<std::pair<long, Rational>>& hull_pts,
                               long i) {
    for (size_t k = 0; k + 1 < hull_pts.size(); ++k) {
        if (hull_pts[k].first <= i && i <= hull_pts[k + 1].first) {
            const auto& a = hull_pts[k];
            const auto& b = hull_pts[k + 1];
            return a.second +
                   (b.second - a.second) * Rational(i - a.first) / Rational(b.first - a.first);
        }
    }
    throw error("newton_polygon: abscissa outside hull");
}

}  // namespace detail

inline NewtonPolygon newton_polygon(const Poly<Rational>& f, const Int& p) {
    if (f.is_zero()) throw error("newton_polygon: zero polynomial");
    std::vector<std::pair<long, Rational>> pts;
    for (long i = 0; i <= f.degree(); ++i)
        if (f[i] != 0) pts.emplace_back(i, vp(f[i], p).finite());
    return detail::hull_of_points(pts, f.degree());
}

/// Newton polygon of a capped-precision polynomial.  A coefficient whose
/// valuation is unresolved is tolerated only when its lower bound already
/// lies on or above the hull of the resolved coefficients.
inline NewtonPolygon newton_polygon(const Poly<CappedPadic>& f) {
    if (f.is_zero()) throw error("newton_polygon: zero polynomial");
    std::vector<std::pair<long, Rational>> pts;
    std::vector<std::pair<long, Rational>> pending;  // bounded-below coefficients
    for (long i = 0; i <= f.degree(); ++i) {
        const auto& a = f[i];
        if (a.is_exact_zero()) continue;
        if (a.state() == CappedPadic::State::Known)
            pts.emplace_back(i, a.valuation().finite());
        else
            pending.emplace_back(i, a.valuation_lower_bound().finite());
    }
    if (pts.empty())
        throw insufficient_precision("newton_polygon: no coefficient valuation resolved");
    // rebuild the hull point list to test the pending coefficients
    std::vector<std::pair<long, Rational>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            if ((b.second - a.second) * (pt.first - a.first) <
                (pt.second - a.second) * (b.first - a.first))
                break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (const auto& [i, bound] : pending) {
        if (i < hull.front().first || i > hull.back().first ||
            bound < detail::hull_height_at(hull, i))
            throw insufficient_precision("newton_polygon: coefficient " + std::to_string(i) +
                                         " unresolved below the hull");
    }
    return detail::hull_of_points(pts, f.degree());
}

/// Slope functional: sup { s : v_p(a_i) >= s*i for all i }.
/// +inf for the zero polynomial and for nonzero constants with v_p(a_0) >= 0;
/// -inf when v_p(a_0) < 0.
inline Val poly_slope(const Poly<Rational>& f, const Int& p) {
    if (f.is_zero()) return Val::infinity();
    if (vp(f[0], p) < Val(0)) return Val::neg_infinity();
    Val s = Val::infinity();
    for (long i = 1; i <= f.degree(); ++i) {
        if (f[i] == 0) continue;
        s = min(s, Val(vp(f[i], p).finite() / i));
    }
    return s;
}

/// Lift the unique root with the given valuation by Newton iteration.
/// Requires a length-1 Newton segment at seed_valuation (simple root of
/// distinct valuation); such slopes are integers and the root lies in Q_p.
inline CappedPadic hensel_root(const Poly<Rational>& f, const Int& p,
                               const Rational& seed_valuation, long target_precision) {
    const NewtonPolygon np = newton_polygon(f, p);
    const NewtonSegment* seg = nullptr;
    for (const auto& s : np.segments)
        if (s.slope == seed_valuation) seg = &s;
    if (!seg || seg->length != 1)
        throw no_simple_segment("no length-1 segment of slope " + seed_valuation.str());
    if (!is_integer(seed_valuation))
        throw no_simple_segment("non-integral slope cannot give a Q_p root");
    const long sigma = to_long(seed_valuation);

    // g(y) = f(p^sigma * y) / p^c, c chosen so min coefficient valuation is 0
    std::vector<Rational> gc(f.degree() + 1);
    Val c = Val::infinity();
    for (long i = 0; i <= f.degree(); ++i) {
        if (f[i] == 0) continue;
        c = min(c, vp(f[i], p) + Val(Rational(sigma) * i));
    }
    const Rational cfin = c.finite();
    if (!is_integer(cfin)) throw error("hensel_root: non-integral normalization");
    for (long i = 0; i <= f.degree(); ++i) {
        if (f[i] == 0) continue;
        const Rational e = Rational(sigma) * i - cfin;
        const long el = to_long(e);
        gc[i] = el >= 0 ? f[i] * Rational(pow_int(p, el))
                        : f[i] / Rational(pow_int(p, -el));
    }

    const long guard = 8;
    const long K = target_precision + guard;
    const Int mod = pow_int(p, K);
    auto reduce = [&](const Rational& x) -> Int {
        Int num = boost::multiprecision::numerator(x) % mod;
        Int den = boost::multiprecision::denominator(x) % mod;
        if (num < 0) num += mod;
        // denominator is coprime to p since v_p(coeff) >= 0
        Int t = 0, nt = 1, r = mod, nr = den;
        while (nr != 0) {
            const Int q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        t %= mod;
        if (t < 0) t += mod;
        return num * t % mod;
    };
    std::vector<Int> g(gc.size()), dg;
    for (size_t i = 0; i < gc.size(); ++i) g[i] = reduce(gc[i]);
    dg.resize(g.size() > 1 ? g.size() - 1 : 0);
    for (size_t i = 1; i < g.size(); ++i) dg[i - 1] = g[i] * i % mod;
    auto eval_mod = [&](const std::vector<Int>& poly, const Int& y) -> Int {
        Int acc = 0;
        for (size_t i = poly.size(); i-- > 0;) acc = (acc * y + poly[i]) % mod;
        return acc;
    };
    auto inv_unit = [&](Int a) -> Int {
        a %= mod;
        if (a < 0) a += mod;
        Int t = 0, nt = 1, r = mod, nr = a;
        while (nr != 0) {
            const Int q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        t %= mod;
        if (t < 0) t += mod;
        return t;
    };

    // seed: the unique simple nonzero root of g modulo p
    Int seed = 0;
    for (Int r = 1; r < p; ++r) {
        if (eval_mod(g, r) % p == 0) {
            if (eval_mod(dg, r) % p == 0)
                throw no_simple_segment("residual root is not simple");
            seed = r;
            break;
        }
    }
    if (seed == 0) throw no_simple_segment("no unit root modulo p");

    Int y = seed;
    for (int it = 0; it < 64; ++it) {
        const Int fy = eval_mod(g, y);
        if (fy == 0) break;
        const Int dfy = eval_mod(dg, y);
        if (dfy % p == 0) throw no_simple_segment("derivative lost invertibility");
        y = (y - fy * inv_unit(dfy)) % mod;
        if (y < 0) y += mod;
        if (vp_int(eval_mod(g, y) == 0 ? mod : eval_mod(g, y), p) >= K) break;
    }
    const Int res = eval_mod(g, y);
    if (res != 0 && vp_int(res, p) < target_precision)
        throw insufficient_precision("hensel_root: iteration did not reach target");
    const Int unit_mod = pow_int(p, target_precision);
    return CappedPadic::from_unit(p, Rational(sigma), y % unit_mod, target_precision);
}

/// Capped-coefficient variant: requires every coefficient valuation resolved
/// with enough precision to run the iteration at the requested target.
inline CappedPadic hensel_root(const Poly<CappedPadic>& f, const Rational& seed_valuation,
                               long target_precision) {
    if (f.is_zero()) throw error("hensel_root: zero polynomial");
    Int p = 0;
    std::vector<Rational> approx(f.degree() + 1, Rational(0));
    for (long i = 0; i <= f.degree(); ++i) {
        const auto& a = f[i];
        if (a.is_exact_zero()) continue;
        p = a.prime();
        if (a.state() != CappedPadic::State::Known)
            throw insufficient_precision("hensel_root: unresolved coefficient");
        const Rational v = a.valuation().finite();
        if (!is_integer(v)) throw error("hensel_root: non-integral coefficient valuation");
        if (a.precision() < target_precision)
            throw insufficient_precision("hensel_root: coefficient precision below target");
        const long vl = to_long(v);
        approx[i] = vl >= 0 ? Rational(a.unit()) * Rational(pow_int(p, vl))
                            : Rational(a.unit()) / Rational(pow_int(p, -vl));
    }
    return hensel_root(Poly<Rational>(std::move(approx)), p, seed_valuation, target_precision);
}

}  // namespace padlab
