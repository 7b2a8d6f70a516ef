#include "padlab/symplectic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>

#include "padlab/rng.hpp"

namespace padlab {

std::vector<long> Root::eps_exponents(long n) const {
    std::vector<long> e(static_cast<size_t>(n), 0);
    switch (kind) {
        case Kind::EpsDiff: e[i - 1] += 1; e[j - 1] -= 1; break;
        case Kind::EpsSum: e[i - 1] += 1; e[j - 1] += 1; break;
        case Kind::NegEpsSum: e[i - 1] -= 1; e[j - 1] -= 1; break;
        case Kind::TwoEps: e[i - 1] += 2; break;
        case Kind::NegTwoEps: e[i - 1] -= 2; break;
    }
    return e;
}

long Root::nu_exponent() const {
    switch (kind) {
        case Kind::EpsDiff: return 0;
        case Kind::EpsSum:
        case Kind::TwoEps: return -1;
        default: return 1;
    }
}

std::string Root::str() const {
    switch (kind) {
        case Kind::EpsDiff: return "e" + std::to_string(i) + "-e" + std::to_string(j);
        case Kind::EpsSum: return "e" + std::to_string(i) + "+e" + std::to_string(j);
        case Kind::NegEpsSum: return "-e" + std::to_string(i) + "-e" + std::to_string(j);
        case Kind::TwoEps: return "2e" + std::to_string(i);
        default: return "-2e" + std::to_string(i);
    }
}

std::vector<Root> positive_roots(long n) {
    std::vector<Root> r;
    for (long j = 1; j <= n; ++j)
        for (long i = j + 1; i <= n; ++i) r.push_back({Root::Kind::EpsDiff, i, j});
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) r.push_back({Root::Kind::EpsSum, i, j});
    for (long i = 1; i <= n; ++i) r.push_back({Root::Kind::TwoEps, i, i});
    return r;
}

long root_height(const Root& r) {
    switch (r.kind) {
        case Root::Kind::EpsDiff: return std::labs(r.j - r.i);
        case Root::Kind::NegEpsSum:
        case Root::Kind::EpsSum: return r.i + r.j - 1;
        default: return 2 * r.i - 1;
    }
}

std::vector<Root> negative_roots(long n) {
    // table order (upper-block differences, then the lower-block family),
    // refined to ascending height so products factor exactly
    std::vector<Root> r;
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) r.push_back({Root::Kind::EpsDiff, i, j});
    for (long i = 1; i <= n; ++i)
        for (long j = i; j <= n; ++j)
            r.push_back(i == j ? Root{Root::Kind::NegTwoEps, i, i}
                               : Root{Root::Kind::NegEpsSum, i, j});
    std::stable_sort(r.begin(), r.end(), [](const Root& a, const Root& b) {
        return root_height(a) < root_height(b);
    });
    return r;
}

std::vector<Root> all_roots(long n) {
    std::vector<Root> r = positive_roots(n);
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) r.push_back({Root::Kind::EpsDiff, i, j});
    for (long i = 1; i <= n; ++i)
        for (long j = i; j <= n; ++j)
            r.push_back(i == j ? Root{Root::Kind::NegTwoEps, i, i}
                               : Root{Root::Kind::NegEpsSum, i, j});
    return r;
}

std::vector<Root> simple_roots(long n) {
    std::vector<Root> r;
    r.push_back({Root::Kind::TwoEps, 1, 1});
    for (long i = 1; i < n; ++i) r.push_back({Root::Kind::EpsDiff, i + 1, i});
    return r;
}

namespace {

// primary/secondary matrix slots of the one-parameter group element
struct RootSlots {
    long r1, c1;
    long r2 = -1, c2 = -1;
    long coef2 = 0;  // entry (r2,c2) carries coef2 * t
};

RootSlots slots_of(const Root& r, long n) {
    const long i = r.i - 1, j = r.j - 1;
    switch (r.kind) {
        case Root::Kind::EpsDiff: return {i, j, n + j, n + i, -1};
        case Root::Kind::EpsSum: return {i, n + j, j, n + i, 1};
        case Root::Kind::NegEpsSum: return {n + i, j, n + j, i, 1};
        case Root::Kind::TwoEps: return {i, n + i};
        default: return {n + i, i};
    }
}

}  // namespace

QMatrix root_group_element(const Root& r, long n, const Rational& t) {
    QMatrix m = QMatrix::identity(2 * n);
    const RootSlots s = slots_of(r, n);
    m(s.r1, s.c1) += t;
    if (s.r2 >= 0) m(s.r2, s.c2) += t * s.coef2;
    return m;
}

QMatrix root_space_generator(const Root& r, long n) {
    // the table's Lie algebra element; note the sign differs from the group
    // element for the eps_i + eps_j rows
    QMatrix m(2 * n, 2 * n);
    const long i = r.i - 1, j = r.j - 1;
    switch (r.kind) {
        case Root::Kind::EpsDiff:
            m(i, j) = 1;
            m(n + j, n + i) = -1;
            break;
        case Root::Kind::EpsSum:
            m(i, n + j) = 1;
            m(j, n + i) = -1;
            break;
        case Root::Kind::NegEpsSum:
            m(n + i, j) = 1;
            m(n + j, i) = -1;
            break;
        case Root::Kind::TwoEps: m(i, n + i) = 1; break;
        default: m(n + i, i) = 1; break;
    }
    return m;
}

QMatrix TorusElement::matrix() const {
    QMatrix m(2 * n, 2 * n);
    for (long k = 0; k < n; ++k) {
        m(k, k) = alpha[k];
        m(n + k, n + k) = nu / alpha[k];
    }
    return m;
}

TorusElement TorusElement::inverse() const {
    TorusElement r{n, alpha, 1 / nu};
    for (auto& a : r.alpha) a = 1 / a;
    return r;
}

TorusElement TorusElement::pow(long e) const {
    TorusElement r = e >= 0 ? *this : inverse();
    long k = std::labs(e);
    TorusElement acc = identity(n);
    while (k) {
        if (k & 1) acc = acc * r;
        r = r * r;
        k >>= 1;
    }
    return acc;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
    if (a.n != b.n) throw error("TorusElement: rank mismatch");
    TorusElement r{a.n, a.alpha, a.nu * b.nu};
    for (long i = 0; i < a.n; ++i) r.alpha[i] = a.alpha[i] * b.alpha[i];
    return r;
}

TorusElement TorusElement::identity(long n) {
    return TorusElement{n, std::vector<Rational>(static_cast<size_t>(n), Rational(1)), 1};
}

TorusElement standard_plus_element(long n, const Int& p) {
    TorusElement t;
    t.n = n;
    t.nu = Rational(p);
    for (long i = 1; i <= n; ++i) t.alpha.push_back(Rational(pow_int(p, i)));
    return t;
}

TorusElement integral_shifted_power(long n, const Int& p, long e) {
    TorusElement t;
    t.n = n;
    t.nu = Rational(pow_int(p, static_cast<unsigned long>((2 * n - 1) * e)));
    for (long i = 1; i <= n; ++i)
        t.alpha.push_back(Rational(pow_int(p, static_cast<unsigned long>((n - i) * e))));
    return t;
}

Rational root_value(const Root& r, const TorusElement& t) {
    Rational v = 1;
    const auto eps = r.eps_exponents(t.n);
    for (long k = 0; k < t.n; ++k) {
        for (long c = 0; c < eps[k]; ++c) v *= t.alpha[k];
        for (long c = 0; c > eps[k]; --c) v /= t.alpha[k];
    }
    const long ne = r.nu_exponent();
    for (long c = 0; c < ne; ++c) v *= t.nu;
    for (long c = 0; c > ne; --c) v /= t.nu;
    return v;
}

namespace {

QMatrix symplectic_form(long n) {
    QMatrix j(2 * n, 2 * n);
    for (long k = 0; k < n; ++k) {
        j(k, n + k) = 1;
        j(n + k, k) = -1;
    }
    return j;
}

}  // namespace

Rational similitude(const QMatrix& g) {
    if (g.rows() != g.cols() || g.rows() % 2 != 0)
        throw not_symplectic("matrix is not 2n x 2n");
    const long n = g.rows() / 2;
    const QMatrix j = symplectic_form(n);
    const QMatrix s = g.transpose() * j * g;
    const Rational nu = s(0, n);
    if (nu == 0) throw not_symplectic("degenerate pairing");
    const QMatrix expected = j * nu;
    if (!(s == expected)) throw not_symplectic("g^t J g is not a multiple of J");
    return nu;
}

GSpMatrix::GSpMatrix(long n, QMatrix entries) : n_(n), m_(std::move(entries)) {
    if (m_.rows() != 2 * n || m_.cols() != 2 * n) throw error("GSpMatrix: wrong shape");
    nu_ = similitude(m_);
}

GSpMatrix GSpMatrix::inverse() const {
    const QMatrix j = symplectic_form(n_);
    // g^-1 = -nu^-1 J g^t J
    QMatrix inv = j * m_.transpose() * j;
    inv = inv * (Rational(-1) / nu_);
    return GSpMatrix(n_, inv);
}

GSpMatrix operator*(const GSpMatrix& a, const GSpMatrix& b) {
    if (a.n_ != b.n_) throw error("GSpMatrix: rank mismatch");
    return GSpMatrix(a.n_, a.m_ * b.m_);
}

bool iwahori_member(const GSpMatrix& g, const Int& p) {
    const long n = g.n();
    const QMatrix& m = g.entries();
    for (long i = 0; i < 2 * n; ++i)
        for (long j = 0; j < 2 * n; ++j)
            if (!p_integral(m(i, j), p))
                throw not_integral("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") = " + m(i, j).str());
    if (!(vp(g.multiplier(), p) == Val(0))) return false;
    // positive-pattern entries must vanish mod p: strictly lower part of the
    // upper-left block and the whole upper-right block
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < i; ++j)
            if (!(vp(m(i, j), p) >= Val(1))) return false;
        for (long j = n; j < 2 * n; ++j)
            if (!(vp(m(i, j), p) >= Val(1))) return false;
    }
    return true;
}

bool t_plus_member(const TorusElement& s, const Int& p) {
    for (const auto& a : simple_roots(s.n))
        if (!(vp(root_value(a, s), p) >= Val(0))) return false;
    return true;
}

std::vector<long> coset_exponents(const TorusElement& s, const Int& p) {
    if (!t_plus_member(s, p)) throw not_plus("coset_exponents");
    std::vector<long> k;
    for (const auto& a : negative_roots(s.n)) {
        const Val v = vp(root_value(a, s), p);
        k.push_back(-to_long(v.finite()));
        if (k.back() < 0) throw error("coset_exponents: positive valuation on a negative root");
    }
    return k;
}

Int coset_count(const TorusElement& s, const Int& p) {
    Int c = 1;
    for (const long k : coset_exponents(s, p)) c *= pow_int(p, static_cast<unsigned long>(k));
    return c;
}

std::vector<GSpMatrix> coset_reps_Vs(const TorusElement& s, const Int& p, std::uint64_t limit) {
    const Int count = coset_count(s, p);
    if (count > limit)
        throw error("coset_reps_Vs: " + count.str() + " representatives exceed limit");
    const auto roots = negative_roots(s.n);
    const auto ks = coset_exponents(s, p);
    std::vector<GSpMatrix> out;
    std::vector<Int> t(roots.size(), 0);
    while (true) {
        QMatrix m = QMatrix::identity(2 * s.n);
        for (size_t r = 0; r < roots.size(); ++r)
            if (t[r] != 0) m = m * root_group_element(roots[r], s.n, Rational(t[r]));
        out.emplace_back(s.n, m);
        // odometer over the parameter ranges
        size_t r = 0;
        for (; r < roots.size(); ++r) {
            if (++t[r] < pow_int(p, static_cast<unsigned long>(ks[r]))) break;
            t[r] = 0;
        }
        if (r == roots.size()) break;
    }
    return out;
}

std::vector<Rational> factor_unipotent(const QMatrix& x, long n) {
    const auto roots = negative_roots(n);
    QMatrix y = x;
    std::vector<Rational> params(roots.size(), 0);
    for (size_t r = 0; r < roots.size(); ++r) {
        const RootSlots sl = slots_of(roots[r], n);
        const Rational c = y(sl.r1, sl.c1);
        params[r] = c;
        if (c != 0) y = root_group_element(roots[r], n, -c) * y;
    }
    if (!(y == QMatrix::identity(2 * n)))
        throw error("factor_unipotent: not a product of negative-root generators");
    return params;
}

// ---------------------------------------------------------------------------
// int64 fast path for the large enumerations

namespace {

constexpr int kMaxDim = 6;  // 2n with n <= 3

struct FastMat {
    long n2 = 0;
    std::array<long long, kMaxDim * kMaxDim> a{};

    static FastMat identity(long n2) {
        FastMat m;
        m.n2 = n2;
        for (long i = 0; i < n2; ++i) m.a[static_cast<size_t>(i * n2 + i)] = 1;
        return m;
    }
    long long& at(long i, long j) { return a[static_cast<size_t>(i * n2 + j)]; }
    long long at(long i, long j) const { return a[static_cast<size_t>(i * n2 + j)]; }

    bool operator==(const FastMat& o) const { return n2 == o.n2 && a == o.a; }
};

FastMat mul(const FastMat& x, const FastMat& y) {
    FastMat r;
    r.n2 = x.n2;
    for (long i = 0; i < x.n2; ++i)
        for (long j = 0; j < x.n2; ++j) {
            __int128 acc = 0;
            for (long k = 0; k < x.n2; ++k)
                acc += static_cast<__int128>(x.at(i, k)) * y.at(k, j);
            if (acc > INT64_MAX / 4 || acc < INT64_MIN / 4)
                throw error("coset enumeration: entry overflow");
            r.at(i, j) = static_cast<long long>(acc);
        }
    return r;
}

FastMat fast_generator(const Root& r, long n, long long t) {
    FastMat m = FastMat::identity(2 * n);
    const RootSlots s = slots_of(r, n);
    m.at(s.r1, s.c1) += t;
    if (s.r2 >= 0) m.at(s.r2, s.c2) += t * s.coef2;
    return m;
}

std::vector<long long> fast_factor(const FastMat& x, long n, const std::vector<Root>& roots) {
    FastMat y = x;
    std::vector<long long> params(roots.size(), 0);
    for (size_t r = 0; r < roots.size(); ++r) {
        const RootSlots sl = slots_of(roots[r], n);
        const long long c = y.at(sl.r1, sl.c1);
        params[r] = c;
        if (c != 0) y = mul(fast_generator(roots[r], n, -c), y);
    }
    if (!(y == FastMat::identity(2 * n)))
        throw error("fast_factor: not a negative-unipotent product");
    return params;
}

std::vector<long long> fast_canonical(FastMat y, long n, const std::vector<Root>& roots,
                                      const std::vector<long long>& moduli) {
    std::vector<long long> t(roots.size(), 0);
    for (size_t r = 0; r < roots.size(); ++r) {
        const auto params = fast_factor(y, n, roots);
        const long long c = params[r];
        long long red = c % moduli[r];
        if (red < 0) red += moduli[r];
        t[r] = red;
        if (red != c) y = mul(fast_generator(roots[r], n, red - c), y);
    }
    // all parameters now canonical
    const auto check = fast_factor(y, n, roots);
    for (size_t r = 0; r < roots.size(); ++r)
        if (check[r] != t[r]) throw error("fast_canonical: reduction failed");
    return t;
}

// mixed-radix linear index of a parameter tuple; injective since the
// total count is capped well below 2^63
std::uint64_t pack_tuple(const std::vector<long long>& t, const std::vector<long long>& moduli) {
    std::uint64_t key = 0;
    for (size_t r = t.size(); r-- > 0;)
        key = key * static_cast<std::uint64_t>(moduli[r]) + static_cast<std::uint64_t>(t[r]);
    return key;
}

std::vector<long long> tuple_moduli(const std::vector<long>& ks, const Int& p) {
    std::vector<long long> m;
    for (const long k : ks) {
        const Int pk = pow_int(p, static_cast<unsigned long>(k));
        if (pk > INT64_MAX / 4) throw error("coset enumeration: modulus overflow");
        m.push_back(static_cast<long long>(pk));
    }
    return m;
}

// iterate all parameter tuples, calling f(tuple, product matrix)
template <typename F>
void for_each_rep(long n, const std::vector<Root>& roots, const std::vector<long long>& moduli,
                  F&& f) {
    std::vector<long long> t(roots.size(), 0);
    // partial products: prefix[i] = g_0(t_0) ... g_{i-1}(t_{i-1})
    std::vector<FastMat> prefix(roots.size() + 1, FastMat::identity(2 * n));
    size_t level = 0;
    while (true) {
        if (level == roots.size()) {
            f(t, prefix[level]);
            // advance odometer
            size_t r = roots.size();
            while (r > 0) {
                --r;
                if (++t[r] < std::max<long long>(moduli[r], 1)) break;
                t[r] = 0;
                if (r == 0) return;
            }
            level = r;
            continue;
        }
        prefix[level + 1] = t[level] == 0
                                ? prefix[level]
                                : mul(prefix[level], fast_generator(roots[level], n, t[level]));
        ++level;
    }
}

bool in_subgroup_mod(const FastMat& z, long n, const std::vector<Root>& roots,
                     const std::vector<long long>& moduli) {
    // entry-valuation criterion for membership in s^-1 I s ∩ I, for z a
    // negative-unipotent integer matrix
    for (size_t r = 0; r < roots.size(); ++r) {
        const RootSlots sl = slots_of(roots[r], n);
        if (moduli[r] <= 1) continue;
        if (z.at(sl.r1, sl.c1) % moduli[r] != 0) return false;
        if (sl.r2 >= 0 && z.at(sl.r2, sl.c2) % moduli[r] != 0) return false;
    }
    return true;
}

FastMat fast_inverse_of_tuple(long n, const std::vector<Root>& roots,
                              const std::vector<long long>& t) {
    FastMat m = FastMat::identity(2 * n);
    for (size_t r = roots.size(); r-- > 0;)
        if (t[r] != 0) m = mul(m, fast_generator(roots[r], n, -t[r]));
    return m;
}

}  // namespace

std::vector<Int> canonical_coset_tuple(const QMatrix& x, const TorusElement& s, const Int& p) {
    const long n = s.n;
    const auto roots = negative_roots(n);
    const auto ks = coset_exponents(s, p);
    QMatrix y = x;
    std::vector<Int> out(roots.size(), 0);
    for (size_t r = 0; r < roots.size(); ++r) {
        const auto params = factor_unipotent(y, n);
        const Rational c = params[r];
        if (!is_integer(c)) throw error("canonical_coset_tuple: non-integral parameter");
        const Int mod = pow_int(p, static_cast<unsigned long>(ks[r]));
        Int red = to_int(c) % mod;
        if (red < 0) red += mod;
        out[r] = red;
        if (Rational(red) != c)
            y = root_group_element(roots[r], n, Rational(red) - c) * y;
    }
    return out;
}

CosetEnumerationReport enumerate_cosets_checked(const TorusElement& s, const Int& p,
                                                bool check_pairwise, std::uint64_t limit) {
    const long n = s.n;
    const auto roots = negative_roots(n);
    const auto ks = coset_exponents(s, p);
    const auto moduli = tuple_moduli(ks, p);
    CosetEnumerationReport rep;
    rep.expected = coset_count(s, p);
    if (rep.expected > limit)
        throw error("enumerate_cosets_checked: count above limit");
    rep.enumerated = 0;
    rep.injective = true;
    rep.pairwise_checked = check_pairwise;
    rep.pairwise_distinct_mod_subgroup = true;

    std::vector<std::vector<long long>> all;
    std::vector<FastMat> mats;
    const bool keep = check_pairwise;
    for_each_rep(n, roots, moduli, [&](const std::vector<long long>& t, const FastMat& m) {
        if (fast_factor(m, n, roots) != t) rep.injective = false;
        ++rep.enumerated;
        if (keep) {
            all.push_back(t);
            mats.push_back(m);
        }
    });

    if (check_pairwise) {
        for (size_t a = 0; a < mats.size() && rep.pairwise_distinct_mod_subgroup; ++a) {
            const FastMat inv_a = fast_inverse_of_tuple(n, roots, all[a]);
            for (size_t b = a + 1; b < mats.size(); ++b) {
                const FastMat z = mul(mats[b], inv_a);
                if (in_subgroup_mod(z, n, roots, moduli)) {
                    rep.pairwise_distinct_mod_subgroup = false;
                    break;
                }
            }
        }
    }
    return rep;
}

HeckeProductReport hecke_product_check(const TorusElement& s1, const TorusElement& s2,
                                       const Int& p, std::uint64_t limit) {
    const long n = s1.n;
    if (s2.n != n) throw error("hecke_product_check: rank mismatch");
    const TorusElement s12 = s1 * s2;
    HeckeProductReport rep;
    rep.count_s1 = coset_count(s1, p);
    rep.count_s2 = coset_count(s2, p);
    rep.count_s1s2 = coset_count(s12, p);
    rep.multiplicative = rep.count_s1 * rep.count_s2 == rep.count_s1s2;

    const auto roots = negative_roots(n);
    const auto k1 = coset_exponents(s1, p);
    const auto k2 = coset_exponents(s2, p);
    const auto k12 = coset_exponents(s12, p);
    const auto mod1 = tuple_moduli(k1, p);
    const auto mod2 = tuple_moduli(k2, p);
    const auto mod12 = tuple_moduli(k12, p);

    // Ad(s2^-1) multiplies the parameter of the alpha-generator by
    // alpha(s2^-1); the semigroup property is that these stay integral
    std::vector<Rational> ad_scale;
    rep.semigroup_ok = true;
    for (size_t r = 0; r < roots.size(); ++r) {
        const Rational a = root_value(roots[r], s2.inverse());
        ad_scale.push_back(a);
        if (!p_integral(a, p)) rep.semigroup_ok = false;
    }
    if (!rep.semigroup_ok) {
        rep.note = "Ad(s2^-1) left the integral cone";
        return rep;
    }

    if (rep.count_s1 * rep.count_s2 > limit) {
        rep.note = "size " + (rep.count_s1 * rep.count_s2).str() + " above limit";
        return rep;
    }

    // int64 path requires integer scalings (true for p-power torus data)
    std::vector<long long> scale;
    for (const auto& a : ad_scale) {
        if (!is_integer(a)) {
            rep.note = "non-integer adjoint scaling; only p-power torus data supported";
            return rep;
        }
        scale.push_back(static_cast<long long>(to_int(a)));
    }

    // canonical keys of the right-hand side are the parameter tuples
    // themselves, i.e. the mixed-radix indices 0..count-1; walk the
    // left-hand products, canonicalize, and match
    std::vector<std::uint64_t> lhs_keys;
    lhs_keys.reserve(static_cast<size_t>(rep.count_s1 * rep.count_s2));
    bool canon_ok = true;
    for_each_rep(n, roots, mod1, [&](const std::vector<long long>& tv, const FastMat&) {
        // Ad(s2^-1)(v): parameters scaled
        std::vector<long long> tv_scaled(tv.size());
        for (size_t r = 0; r < tv.size(); ++r) tv_scaled[r] = tv[r] * scale[r];
        FastMat adv = FastMat::identity(2 * n);
        for (size_t r = 0; r < roots.size(); ++r)
            if (tv_scaled[r] != 0)
                adv = mul(adv, fast_generator(roots[r], n, tv_scaled[r]));
        for_each_rep(n, roots, mod2, [&](const std::vector<long long>&, const FastMat& w) {
            const FastMat m = mul(adv, w);
            const auto tup = fast_canonical(m, n, roots, mod12);
            // spot-check the canonicalization: the element must lie in the
            // subgroup times its canonical representative
            if ((lhs_keys.size() & 0x3ff) == 0) {
                const FastMat z = mul(m, fast_inverse_of_tuple(n, roots, tup));
                if (!in_subgroup_mod(z, n, roots, mod12)) canon_ok = false;
            }
            lhs_keys.push_back(pack_tuple(tup, mod12));
        });
    });
    rep.spot_checks_ok = canon_ok;

    std::sort(lhs_keys.begin(), lhs_keys.end());
    bool identity = lhs_keys.size() == static_cast<std::uint64_t>(rep.count_s1s2);
    for (std::uint64_t i = 0; identity && i < lhs_keys.size(); ++i)
        if (lhs_keys[static_cast<size_t>(i)] != i) identity = false;
    rep.set_identity_ok = identity;
    if (!identity) rep.note = "left-hand cosets do not biject onto the product cosets";
    return rep;
}

GSpMatrix sample_gamma(long n, const Int& p, long word_length, std::uint64_t seed) {
    if (word_length < 1) throw error("sample_gamma: word_length >= 1 required");
    Rng rng(seed);
    const auto roots = all_roots(n);
    const long alphabet = static_cast<long>(roots.size()) + n;
    QMatrix m = QMatrix::identity(2 * n);
    for (long w = 0; w < word_length; ++w) {
        const long pick = rng.range(0, alphabet - 1);
        if (pick < static_cast<long>(roots.size())) {
            const Root& r = roots[static_cast<size_t>(pick)];
            Rational t(rng.coin() ? rng.range(1, 2) : -rng.range(1, 2));
            if (r.positive()) t *= Rational(p);
            m = m * root_group_element(r, n, t);
        } else {
            const long i = pick - static_cast<long>(roots.size());
            QMatrix d = QMatrix::identity(2 * n);
            d(i, i) = -1;
            d(n + i, n + i) = -1;
            m = m * d;
        }
    }
    GSpMatrix g(n, m);
    if (g.multiplier() != 1) throw error("sample_gamma: multiplier drifted");
    if (!iwahori_member(g, p)) throw error("sample_gamma: left the level subgroup");
    return g;
}

std::string gsp_to_json(const GSpMatrix& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n();
    auto rows = nlohmann::ordered_json::array();
    for (long i = 0; i < 2 * g.n(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (long k = 0; k < 2 * g.n(); ++k) row.push_back(g.entries()(i, k).str());
        rows.push_back(row);
    }
    j["entries"] = rows;
    j["multiplier"] = g.multiplier().str();
    return j.dump();
}

GSpMatrix gsp_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const long n = j.at("n").get<long>();
    QMatrix m(2 * n, 2 * n);
    for (long i = 0; i < 2 * n; ++i)
        for (long k = 0; k < 2 * n; ++k)
            m(i, k) = parse_rational(
                j.at("entries").at(static_cast<size_t>(i)).at(static_cast<size_t>(k))
                    .get<std::string>());
    return GSpMatrix(n, m);
}

}  // namespace padlab
