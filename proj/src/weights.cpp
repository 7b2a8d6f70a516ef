#include "padlab/weights.hpp"

#include <algorithm>
#include <climits>

namespace padlab {

Weight operator+(const Weight& a, const Weight& b) {
    if (a.n != b.n) throw error("Weight: rank mismatch");
    Weight r = a;
    for (long i = 0; i < a.n; ++i) r.eps[i] += b.eps[i];
    r.central += b.central;
    return r;
}

Weight operator-(const Weight& a, const Weight& b) { return a + b * (-1); }

Weight operator*(const Weight& a, long s) {
    Weight r = a;
    for (auto& e : r.eps) e *= s;
    r.central *= s;
    return r;
}

Rational Weight::eval(const TorusElement& t) const {
    if (t.n != n) throw error("Weight::eval: rank mismatch");
    Rational v = 1;
    for (long i = 0; i < n; ++i) {
        for (long c = 0; c < eps[i]; ++c) v *= t.alpha[i];
        for (long c = 0; c > eps[i]; --c) v /= t.alpha[i];
    }
    for (long c = 0; c < central; ++c) v *= t.nu;
    for (long c = 0; c > central; --c) v /= t.nu;
    return v;
}

CappedPadic Weight::eval(const std::vector<CappedPadic>& alpha, const CappedPadic& nu) const {
    if (static_cast<long>(alpha.size()) != n) throw error("Weight::eval: rank mismatch");
    CappedPadic v = CappedPadic::embed(1, nu.prime(), default_precision());
    // keep the precision of the inputs rather than the embed default
    long prec = LONG_MAX;
    for (const auto& a : alpha)
        if (a.state() == CappedPadic::State::Known) prec = std::min(prec, a.precision());
    if (nu.state() == CappedPadic::State::Known) prec = std::min(prec, nu.precision());
    if (prec != LONG_MAX) v = CappedPadic::embed(1, nu.prime(), prec);
    for (long i = 0; i < n; ++i)
        if (eps[i] != 0) v = v * alpha[i].pow(eps[i]);
    if (central != 0) v = v * nu.pow(central);
    return v;
}

std::string Weight::str() const {
    std::string s = "(";
    for (long i = 0; i < n; ++i) s += std::to_string(eps[i]) + (i + 1 < n ? "," : "");
    s += ";" + std::to_string(central) + ")";
    return s;
}

Weight root_weight(const Root& r, long n) {
    return Weight(n, r.eps_exponents(n), r.nu_exponent());
}

Val vp_weight(const Weight& lambda, const Weight& mu, const Int& p) {
    if (lambda.n != mu.n) throw error("vp_weight: rank mismatch");
    Val v = Val::infinity();
    for (long i = 0; i < lambda.n; ++i) {
        const long d = lambda.eps[i] - mu.eps[i];
        if (d != 0) v = min(v, vp(Rational(d), p));
    }
    const long dc = lambda.central - mu.central;
    if (dc != 0) v = min(v, vp(Rational(dc), p));
    return v;
}

bool same_weight_class(const Weight& lambda, const Weight& mu, const Int& p) {
    const Int q = p - 1;
    if (q == 1) return true;
    for (long i = 0; i < lambda.n; ++i)
        if ((lambda.eps[i] - mu.eps[i]) % q != 0) return false;
    return (lambda.central - mu.central) % q == 0;
}

bool weight_congruent(const Weight& lambda, const Weight& mu, const Int& p, long m) {
    if (!same_weight_class(lambda, mu, p)) return false;
    return weight_class_depth(lambda, mu, p) >= Val(m);
}

Val weight_class_depth(const Weight& lambda, const Weight& mu, const Int& p) {
    if (!same_weight_class(lambda, mu, p))
        throw error("weight_class_depth: weights in different classes");
    // (p-1) is coprime to p, so the depth is just the coordinatewise v_p
    return vp_weight(lambda, mu, p);
}

long simple_pairing(const Weight& lambda, const Root& alpha) {
    if (alpha.kind == Root::Kind::TwoEps && alpha.i == 1) return lambda.eps[0];
    if (alpha.kind == Root::Kind::EpsDiff && alpha.i == alpha.j + 1)
        return lambda.eps[alpha.i - 1] - lambda.eps[alpha.j - 1];
    throw error("simple_pairing: not a simple root: " + alpha.str());
}

bool is_dominant(const Weight& lambda) {
    for (const auto& a : simple_roots(lambda.n))
        if (simple_pairing(lambda, a) < 0) return false;
    return true;
}

Weight rho(long n) {
    Weight r(n, std::vector<long>(static_cast<size_t>(n), 0), 0);
    for (const auto& a : positive_roots(n)) {
        const auto e = a.eps_exponents(n);
        for (long i = 0; i < n; ++i) r.eps[i] += e[i];
    }
    for (auto& e : r.eps) {
        if (e % 2 != 0) throw error("rho: odd positive-root sum");
        e /= 2;
    }
    return r;
}

Weight WeylElement::apply(const Weight& lambda) const {
    const long n = rank();
    if (lambda.n != n) throw error("WeylElement: rank mismatch");
    Weight out(n, std::vector<long>(static_cast<size_t>(n), 0), lambda.central);
    for (long i = 0; i < n; ++i) {
        if (sign[i] > 0) {
            out.eps[perm[i]] += lambda.eps[i];
        } else {
            // e_i -> e_nu - e_{sigma(i)}
            out.eps[perm[i]] -= lambda.eps[i];
            out.central += lambda.eps[i];
        }
    }
    return out;
}

bool WeylElement::is_identity() const {
    for (long i = 0; i < rank(); ++i)
        if (perm[i] != i || sign[i] < 0) return false;
    return true;
}

std::vector<WeylElement> weyl_group(long n) {
    if (n < 1 || n > 4) throw error("weyl_group: rank capped at 4");
    std::vector<long> idx(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) idx[i] = i;
    std::vector<WeylElement> out;
    std::sort(idx.begin(), idx.end());
    do {
        for (long bits = 0; bits < (1 << n); ++bits) {
            WeylElement w;
            w.perm = idx;
            for (long i = 0; i < n; ++i) w.sign.push_back((bits >> i) & 1 ? -1 : 1);
            out.push_back(std::move(w));
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

long weyl_length(const WeylElement& w, long n) {
    long len = 0;
    const auto negs = negative_roots(n);
    for (const auto& a : positive_roots(n)) {
        const Weight img = w.apply(root_weight(a, n));
        for (const auto& b : negs)
            if (img == root_weight(b, n)) {
                ++len;
                break;
            }
    }
    return len;
}

Weight dot_action(const WeylElement& w, const Weight& lambda) {
    const Weight r = rho(lambda.n);
    return w.apply(lambda + r) - r;
}

ReflectionDefect lemma_coeffs(const WeylElement& w, const Weight& lambda) {
    if (w.is_identity()) throw error("lemma_coeffs: w must differ from the identity");
    if (!is_dominant(lambda)) throw error("lemma_coeffs: dominant weight required");
    const long n = lambda.n;
    const Weight diff = lambda - dot_action(w, lambda);
    // solve diff = sum c_alpha alpha over the simple roots; the eps-part is
    // triangular from the top coordinate down
    const auto simples = simple_roots(n);
    std::vector<Rational> c(simples.size(), 0);
    std::vector<Rational> remaining;
    for (long i = 0; i < n; ++i) remaining.push_back(Rational(diff.eps[i]));
    for (long i = n - 1; i >= 1; --i) {
        // simple root eps_{i+1} - eps_i sits at index i in simples
        c[static_cast<size_t>(i)] = remaining[static_cast<size_t>(i)];
        remaining[static_cast<size_t>(i - 1)] += remaining[static_cast<size_t>(i)];
        remaining[static_cast<size_t>(i)] = 0;
    }
    c[0] = remaining[0] / 2;  // 2 eps_1
    ReflectionDefect out;
    for (size_t k = 0; k < simples.size(); ++k) {
        if (!is_integer(c[k]) || c[k] < 0)
            throw error("lemma_coeffs: coefficient not a nonnegative integer");
        out.coeffs.push_back(to_long(c[k]));
    }
    // central-coordinate consistency: only 2 eps_1 carries a nu-power
    long central = 0;
    for (size_t k = 0; k < simples.size(); ++k)
        central += out.coeffs[k] * root_weight(simples[k], n).central;
    if (central != diff.central)
        throw error("lemma_coeffs: central coordinate inconsistent");
    for (size_t k = 0; k < simples.size(); ++k) {
        if (2 * out.coeffs[k] >= simple_pairing(lambda, simples[k])) {
            out.witness = static_cast<long>(k);
            break;
        }
    }
    if (out.witness < 0) throw error("lemma_coeffs: no witness root");
    return out;
}

Val RegularTorusPoint::root_valuation(const Root& r) const {
    Val v(0);
    const auto e = r.eps_exponents(n);
    for (long i = 0; i < n; ++i)
        if (e[i] != 0) v = v + Val(xi[i].valuation().finite() * e[i]);
    if (r.nu_exponent() != 0) v = v + Val(nu.valuation().finite() * r.nu_exponent());
    return v;
}

bool RegularTorusPoint::is_regular() const {
    for (const auto& r : all_roots(n))
        if (root_valuation(r) == Val(0)) return false;
    return true;
}

RegularTorusPoint RegularTorusPoint::transformed(const WeylElement& w) const {
    RegularTorusPoint out;
    out.n = n;
    out.nu = nu;
    out.xi.resize(static_cast<size_t>(n), CappedPadic::zero(nu.prime()));
    for (long i = 0; i < n; ++i)
        out.xi[w.perm[i]] = w.sign[i] > 0 ? xi[i] : nu / xi[i];
    return out;
}

namespace {

// shared Weyl-character evaluation; Scalar is Rational or CappedPadic
template <typename Scalar, typename EvalWeight>
Scalar wcf_core(const Weight& lambda, long n, EvalWeight&& value_of, const Scalar& one) {
    if (!is_dominant(lambda)) throw error("weyl_char_value: dominant weight required");
    Scalar denom = one;
    for (const auto& a : positive_roots(n)) {
        const Weight neg = root_weight(a, n) * (-1);
        denom = denom * (one - value_of(neg));
    }
    bool first = true;
    Scalar num = one;
    for (const auto& w : weyl_group(n)) {
        const Weight wl = dot_action(w, lambda);
        Scalar term = value_of(wl);
        if (weyl_length(w, n) % 2) term = -term;
        num = first ? term : num + term;
        first = false;
    }
    return num / denom;
}

}  // namespace

CappedPadic weyl_char_value(const Weight& lambda, const RegularTorusPoint& xi) {
    if (lambda.n != xi.n) throw error("weyl_char_value: rank mismatch");
    if (!xi.is_regular())
        throw not_regular("a root takes unit valuation on the torus point");
    const Int p = xi.nu.prime();
    long prec = default_precision();
    for (const auto& x : xi.xi)
        if (x.state() == CappedPadic::State::Known) prec = std::min(prec, x.precision());
    const CappedPadic one = CappedPadic::embed(1, p, prec);
    return wcf_core<CappedPadic>(
        lambda, lambda.n, [&](const Weight& w) { return w.eval(xi.xi, xi.nu); }, one);
}

Rational weyl_char_value_exact(const Weight& lambda, const TorusElement& t) {
    if (lambda.n != t.n) throw error("weyl_char_value_exact: rank mismatch");
    for (const auto& r : all_roots(t.n))
        if (root_value(r, t) == 1)
            throw not_regular("a root takes the value 1 at the torus point");
    return wcf_core<Rational>(
        lambda, lambda.n, [&](const Weight& w) { return w.eval(t); }, Rational(1));
}

}  // namespace padlab
