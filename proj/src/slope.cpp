#include "padlab/slope.hpp"

#include <algorithm>
#include <set>

namespace padlab {

MBound::MBound(std::vector<std::pair<Rational, Int>> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw error("MBound: empty table");
    std::sort(steps_.begin(), steps_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Int prev = 0;
    for (const auto& [alpha, m] : steps_) {
        if (m <= 0 || m % 2 != 0) throw error("MBound: values must be even and positive");
        if (m < prev) throw error("MBound: values must be non-decreasing");
        prev = m;
    }
}

Int MBound::at(const Rational& alpha) const {
    if (steps_.empty() || alpha < steps_.front().first)
        throw error("MBound: no value declared at " + alpha.str());
    Int m = steps_.front().second;
    for (const auto& [thr, v] : steps_)
        if (thr <= alpha) m = v;
    return m;
}

SlopeProfile slope_profile(const SyntheticHeckeModule& h, const std::string& op_id) {
    SlopeProfile out;
    out.op_id = op_id;
    std::map<Rational, long> dims;
    for (const auto& b : h.blocks()) dims[b.character.value(op_id)] += b.dimension;
    for (const auto& [value, dim] : dims)
        out.rows.emplace_back(value, vp(value, h.prime()), dim);
    return out;
}

std::string SlopeProfile::csv() const {
    std::string s = "eigenvalue,valuation,dim\n";
    for (const auto& [v, val, d] : rows)
        s += v.str() + "," + val.str() + "," + std::to_string(d) + "\n";
    return s;
}

SlopeSubspace slope_subspace(const SyntheticHeckeModule& h, const std::string& op_id,
                             const Rational& alpha, bool at_most) {
    SlopeSubspace out;
    std::set<Rational> seen;
    for (const auto& b : h.blocks()) {
        const Rational mu = b.character.value(op_id);
        const Val v = vp(mu, h.prime());
        const bool in = at_most ? v <= Val(alpha) : v == Val(alpha);
        if (!in) continue;
        out.dimension += b.dimension;
        if (seen.insert(mu).second) out.eigenvalues.push_back(mu);
    }
    return out;
}

Poly<Rational> approx_idempotent(const SyntheticHeckeModule& h, const SyntheticHeckeModule& h2,
                                 const std::string& op_id, const Rational& alpha) {
    std::set<Rational> low;
    for (const auto& mu : slope_subspace(h, op_id, alpha, true).eigenvalues) low.insert(mu);
    for (const auto& mu : slope_subspace(h2, op_id, alpha, true).eigenvalues) low.insert(mu);
    Poly<Rational> prod = Poly<Rational>::constant(1);
    for (const auto& mu : low) {
        if (mu == 0) throw zero_eigenvalue("slope projector over a zero eigenvalue");
        prod = prod * Poly<Rational>(std::vector<Rational>{1, Rational(-1) / mu});
    }
    return Poly<Rational>::constant(1) - prod;
}

namespace {

Rational eval_poly(const Poly<Rational>& f, const Rational& x) {
    if (f.is_zero()) return 0;
    return f.eval(x);
}

// evaluate the projector polynomial at the designated generator of the module
QMatrix projector_matrix(const SyntheticHeckeModule& h, const std::string& op_id,
                         const Poly<Rational>& f) {
    QMatrix acc(h.dim(), h.dim());
    if (f.is_zero()) return acc;
    const QMatrix& t = h.action(op_id);
    acc = QMatrix::identity(h.dim()) * f[f.degree()];
    for (long i = f.degree(); i-- > 0;) acc = acc * t + QMatrix::identity(h.dim()) * f[i];
    return acc;
}

Rational trace_on_low_part(const SyntheticHeckeModule& h, const std::string& op_id,
                           const AlgebraElement& elt, const Rational& alpha) {
    Rational tr = 0;
    for (size_t b = 0; b < h.blocks().size(); ++b) {
        const Rational mu = h.blocks()[b].character.value(op_id);
        if (vp(mu, h.prime()) <= Val(alpha)) tr += trace_on_block(h, elt, b);
    }
    return tr;
}

// numerator matrix of the element (denominator left to the caller)
QMatrix evaluate_element(const SyntheticHeckeModule& h, const AlgebraElement& elt) {
    QMatrix acc(h.dim(), h.dim());
    for (const auto& term : elt.terms) {
        QMatrix t = QMatrix::identity(h.dim()) * term.coeff;
        for (const auto& f : term.factors) {
            QMatrix g = h.action(f.gen);
            for (long i = 0; i < h.dim(); ++i) g(i, i) -= f.shift;
            t = t * g;
        }
        acc = acc + t;
    }
    return acc;
}

Rational truncated_probe_trace(const SyntheticHeckeModule& h, const std::string& op_id,
                               const Poly<Rational>& proj, const AlgebraElement& probe,
                               long power) {
    const QMatrix e = projector_matrix(h, op_id, proj);
    const QMatrix prod = evaluate_element(h, probe) * e.pow(static_cast<unsigned long>(power));
    return prod.trace() / probe.denominator;
}

}  // namespace

ProjectorPropertyReport check_projector_properties(const SyntheticHeckeModule& h,
                                                   const SyntheticHeckeModule& h2,
                                                   const std::string& op_id,
                                                   const Rational& alpha, const MBound& m,
                                                   long max_power) {
    ProjectorPropertyReport rep;
    const Int p = h.prime();
    const Poly<Rational> proj = approx_idempotent(h, h2, op_id, alpha);
    const Int m_next = m.at(alpha + 1);
    const Rational zeta_threshold = Rational(2) / Rational(m_next);

    rep.dimension_bound_ok = true;
    for (const auto* mod : {&h, &h2}) {
        if (2 * slope_subspace(*mod, op_id, alpha, true).dimension > m.at(alpha))
            rep.dimension_bound_ok = false;
        if (2 * slope_subspace(*mod, op_id, alpha + 1, true).dimension > m.at(alpha + 1))
            rep.dimension_bound_ok = false;
    }

    rep.high_blocks_small = true;
    rep.low_blocks_one = true;
    rep.quantization_ok = true;
    for (const auto* mod : {&h, &h2}) {
        for (const auto& b : mod->blocks()) {
            const Rational mu = b.character.value(op_id);
            const Val v = vp(mu, p);
            const Rational zeta = eval_poly(proj, mu);
            if (v <= Val(alpha)) {
                if (zeta != 1) rep.low_blocks_one = false;
            } else {
                if (!(vp(zeta, p) >= Val(zeta_threshold))) rep.high_blocks_small = false;
            }
            // eigenvalue valuations on the <= alpha+1 part must sit in the
            // (2/M(alpha+1)) lattice
            if (v <= Val(alpha + 1) && v.is_finite()) {
                const Rational q = v.finite() / zeta_threshold;
                if (!is_integer(q) || q < 0) rep.quantization_ok = false;
            }
        }
    }

    const long low_count = static_cast<long>(slope_subspace(h, op_id, alpha, true).eigenvalues.size() +
                                             slope_subspace(h2, op_id, alpha, true).eigenvalues.size());
    (void)low_count;
    rep.degree_ok = proj.is_zero() || Rational(proj.degree()) <= Rational(m.at(alpha));
    rep.vanishes_at_zero = proj.is_zero() || proj[0] == 0;
    rep.slope_bound_ok = poly_slope(proj, p) >= Val(-alpha);

    rep.power_coefficients_ok = true;
    for (long L = 1; L <= max_power; ++L) {
        if (proj.is_zero()) break;
        const Poly<Rational> pw = proj.pow(static_cast<unsigned long>(L));
        for (long i = 0; i <= pw.degree(); ++i) {
            if (i < L) {
                if (pw[i] != 0) rep.power_coefficients_ok = false;
            } else if (pw[i] != 0 && !(vp(pw[i], p) >= Val(-alpha * i))) {
                rep.power_coefficients_ok = false;
            }
        }
    }
    return rep;
}

SlopeTraceReport trace_congruence(const SyntheticHeckeModule& h, const SyntheticHeckeModule& h2,
                                  const std::string& op_id, const AlgebraElement& elt,
                                  const Rational& alpha, long power, const MBound& m) {
    for (const auto& term : elt.terms)
        if (!p_integral(term.coeff, h.prime()))
            throw error("trace_congruence: operator coefficients must be integral at p");

    SlopeTraceReport rep;
    const Poly<Rational> proj = approx_idempotent(h, h2, op_id, alpha);
    rep.truncated_trace = truncated_probe_trace(h, op_id, proj, elt, power);
    rep.low_trace = trace_on_low_part(h, op_id, elt, alpha);
    rep.threshold = Rational(2 * power) / Rational(m.at(alpha + 1));
    rep.difference_valuation = vp(rep.truncated_trace - rep.low_trace, h.prime());
    rep.ok = rep.difference_valuation >= Val(rep.threshold);
    return rep;
}

namespace {

// extract the blocks whose designated eigenvalue has exact slope alpha
SyntheticHeckeModule exact_slope_part(const SyntheticHeckeModule& h, const std::string& op_id,
                                      const Rational& alpha) {
    std::vector<BlockSpec> blocks;
    for (const auto& b : h.blocks())
        if (vp(b.character.value(op_id), h.prime()) == Val(alpha)) blocks.push_back(b);
    if (blocks.empty()) throw error("exact_slope_part: empty slope subspace");
    return synth_module(std::move(blocks), 0);
}

std::vector<AlgebraElement> probe_set(const GeneratorSet& gens, const std::string& op_id) {
    std::vector<AlgebraElement> probes;
    probes.push_back(AlgebraElement::one());
    for (const auto& id : gens.ids()) probes.push_back(AlgebraElement::generator(id));
    probes.push_back(
        AlgebraElement::product({LinearFactor{op_id, 0}, LinearFactor{op_id, 0}}, 1));
    for (const auto& id : gens.ids())
        if (id != op_id)
            probes.push_back(
                AlgebraElement::product({LinearFactor{op_id, 0}, LinearFactor{id, 0}}, 1));
    return probes;
}

}  // namespace

PipelineReport slope_family_pipeline(const std::vector<Weight>& weights,
                                     const std::vector<SyntheticHeckeModule>& modules,
                                     const std::string& op_id, const Rational& alpha,
                                     const Rational& a_prime, const Rational& a,
                                     const Rational& b, const MBound& m) {
    if (weights.size() != modules.size() || weights.empty())
        throw error("slope_family_pipeline: one module per weight required");
    if (a_prime <= 0 || a <= 0 || b > 0)
        throw error("slope_family_pipeline: need a', a > 0 and b <= 0");
    const Int p = modules[0].prime();
    const Int m_alpha = m.at(alpha);
    const Int m_next = m.at(alpha + 1);

    PipelineReport rep;
    const Rational a_bar = std::min(Rational(2) * a_prime / Rational(m_next), a);
    rep.constancy_modulus =
        LogLinear{-b / a_bar - 1, 1 / a_bar, m_alpha, p};  // (log_p M(alpha) - b)/a_bar - 1

    // pairwise probe congruences and local constancy
    rep.probe_congruences_ok = true;
    rep.constancy_ok = true;
    rep.low_constancy_ok = true;
    for (size_t i = 0; i < modules.size(); ++i)
        for (size_t j = i + 1; j < modules.size(); ++j) {
            if (!same_weight_class(weights[i], weights[j], p)) continue;
            ++rep.pairs_examined;
            const Val depth = weight_class_depth(weights[i], weights[j], p);
            const Rational mm = depth.is_infinite() ? Rational(0) : depth.finite();

            // probe form of the pair hypothesis at L = ceil(a'(m+1));
            // coincident weights demand equal traces outright
            const long L = static_cast<long>(ceil_int(a_prime * (mm + 1)));
            const Poly<Rational> proj = approx_idempotent(modules[i], modules[j], op_id, alpha);
            const Rational threshold = a * (mm + 1) + b;
            for (const auto& probe : probe_set(modules[i].generators(), op_id)) {
                const auto t1 = truncated_probe_trace(modules[i], op_id, proj, probe, L);
                const auto t2 = truncated_probe_trace(modules[j], op_id, proj, probe, L);
                if (depth.is_infinite()) {
                    if (t1 != t2) rep.probe_congruences_ok = false;
                } else if (!(vp(t1 - t2, p) >= Val(threshold))) {
                    rep.probe_congruences_ok = false;
                }
            }

            // dimension constancy at depth >= D(alpha)
            if (!depth.is_infinite() && cmp(depth, rep.constancy_modulus) < 0) continue;
            const long di = slope_subspace(modules[i], op_id, alpha, false).dimension;
            const long dj = slope_subspace(modules[j], op_id, alpha, false).dimension;
            if (di != dj) rep.constancy_ok = false;
            const long li = slope_subspace(modules[i], op_id, alpha, true).dimension;
            const long lj = slope_subspace(modules[j], op_id, alpha, true).dimension;
            if (li != lj) rep.low_constancy_ok = false;
        }

    // slope-set stabilization record
    std::set<Rational> slopes;
    for (const auto& mod : modules)
        for (const auto& bl : mod.blocks()) {
            const Val v = vp(bl.character.value(op_id), p);
            if (v.is_finite() && v <= Val(alpha)) slopes.insert(v.finite());
        }
    rep.slopes_seen.assign(slopes.begin(), slopes.end());

    // hand off to the family builder on the exact-slope parts
    std::vector<SyntheticHeckeModule> parts;
    for (const auto& mod : modules) parts.push_back(exact_slope_part(mod, op_id, alpha));
    const Rational fam_a = std::min(a, Rational(2) * a_prime / Rational(m_next)) / Rational(m_alpha);
    const LogLinear fam_b =
        LogLinear{b / Rational(m_alpha), -Rational(m_alpha + 2), m_alpha, p};
    const Character theta0 = eigencharacters_declared(parts[0]).front().first;
    rep.family = build_family(weights, parts, theta0, 0, fam_a, fam_b);
    rep.family_ok = rep.family.ok();
    return rep;
}

}  // namespace padlab
