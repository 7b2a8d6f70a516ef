#include "padlab/transfer.hpp"

#include <algorithm>
#include <set>

namespace padlab {

TransferInstance::TransferInstance(SyntheticHeckeModule h, SyntheticHeckeModule h_prime,
                                   GeneratorMap phi, Int capacity)
    : h_(std::move(h)), h_prime_(std::move(h_prime)), phi_(std::move(phi)),
      capacity_(std::move(capacity)) {
    if (h_.prime() != h_prime_.prime()) throw error("TransferInstance: mixed primes");
    if (!(phi_.source() == h_prime_.generators()) || !(phi_.target() == h_.generators()))
        throw generator_mismatch("TransferInstance: morphism does not match the modules");
    if (capacity_ < 2 || Rational(2 * h_.dim()) > Rational(capacity_) ||
        Rational(2 * h_prime_.dim()) > Rational(capacity_))
        throw error("TransferInstance: capacity below 2*dim");
}

namespace {

// obstruction set Omega(theta): finite valuations of the distances from
// theta resp. its pullback to the eigencharacters of the two modules
std::vector<Rational> obstructions(const TransferInstance& inst, const Character& theta) {
    const Character pulled = dual_map(inst.phi(), theta);
    std::set<Rational> om;
    for (const auto& [mu, mult] : eigencharacters_declared(inst.h())) {
        const Val v = char_distance_vp(mu, theta);
        if (v.is_finite()) om.insert(v.finite());
    }
    for (const auto& [mu, mult] : eigencharacters_declared(inst.h_prime())) {
        const Val v = char_distance_vp(mu, pulled);
        if (v.is_finite()) om.insert(v.finite());
    }
    return {om.begin(), om.end()};
}

}  // namespace

Rational find_gap_c(const TransferInstance& inst, const Character& theta, const Rational& m) {
    const Int p = inst.prime();
    const Int M = inst.capacity();
    const auto omega = obstructions(inst, theta);

    // rational stand-in for log_p M: exact when M is a power of p, else the
    // tightest 32-bit dyadic upper bound (only candidate placement uses it;
    // every validity verdict below compares against the true log exactly)
    const auto lx = exact_log(M, p);
    const Rational l_ub = lx ? *lx : log_upper_bound(M, p, 32);

    // spacing: half the least positive gap between the breakpoints
    std::set<Rational> breaks;
    breaks.insert(m);
    breaks.insert(m - Rational(2 * M + 3) / 2 * l_ub);
    for (const auto& w : omega) {
        breaks.insert(w);
        breaks.insert(w - l_ub);
    }
    Rational delta(1, 2);
    if (breaks.size() >= 2) {
        Rational best = 0;
        for (auto it = std::next(breaks.begin()); it != breaks.end(); ++it) {
            const Rational gap = *it - *std::prev(it);
            if (gap > 0 && (best == 0 || gap < best)) best = gap;
        }
        if (best > 0) delta = best / 2;
    }

    std::vector<Rational> candidates{m};
    for (const auto& w : omega) candidates.push_back(w - l_ub - delta);
    std::sort(candidates.rbegin(), candidates.rend());

    const auto valid = [&](const Rational& c) {
        if (c > m) return false;
        // c >= m - (M + 3/2) log_p M
        if (cmp_log_threshold(c - m, 0, -Rational(2 * M + 3) / 2, M, p) < 0) return false;
        for (const auto& w : omega) {
            // window [c, c + log_p M] must miss w: need w < c or w - c > log_p M
            if (w < c) continue;
            if (cmp_log_threshold(w - c, 0, 1, M, p) <= 0) return false;
        }
        return true;
    };

    for (const auto& c : candidates)
        if (valid(c)) return c;
    throw no_gap("no admissible level in the interval; |Omega| = " +
                 std::to_string(omega.size()) + " exceeds the capacity contract");
}

SeparatorCertificate build_e_theta(const TransferInstance& inst, const Character& theta,
                                   const Rational& m) {
    SeparatorCertificate cert;
    cert.m = m;
    cert.c = find_gap_c(inst, theta, m);
    const Character pulled = dual_map(inst.phi(), theta);
    const auto& src = inst.phi().source();

    std::vector<LinearFactor> factors;
    cert.xi = 1;
    for (const auto& [mu, mult] : eigencharacters_declared(inst.h())) {
        if (geq(char_distance_vp(mu, theta), LogLinear::rational(cert.c))) continue;
        const Character pulled_mu = dual_map(inst.phi(), mu);
        std::string witness;
        for (const auto& id : src.ids()) {
            if (!geq(vp(pulled_mu.value(id) - pulled.value(id), inst.prime()),
                     LogLinear::rational(cert.c))) {
                witness = id;
                break;
            }
        }
        if (witness.empty())
            throw witness_not_found("no separating generator for " + mu.str());
        cert.excluded_h.emplace_back(mu, witness);
        cert.xi *= pulled.value(witness) - pulled_mu.value(witness);
        factors.push_back({witness, pulled_mu.value(witness)});
    }
    for (const auto& [mu, mult] : eigencharacters_declared(inst.h_prime())) {
        if (geq(char_distance_vp(mu, pulled), LogLinear::rational(cert.c))) continue;
        std::string witness;
        for (const auto& id : src.ids()) {
            if (!geq(vp(pulled.value(id) - mu.value(id), inst.prime()),
                     LogLinear::rational(cert.c))) {
                witness = id;
                break;
            }
        }
        if (witness.empty())
            throw witness_not_found("no separating generator for " + mu.str());
        cert.excluded_h_prime.emplace_back(mu, witness);
        cert.xi *= pulled.value(witness) - mu.value(witness);
        factors.push_back({witness, mu.value(witness)});
    }
    cert.projector = AlgebraElement::product(std::move(factors), cert.xi);
    return cert;
}

namespace {

// scalar value of the separator at a character of the source algebra
Rational separator_value_at(const SeparatorCertificate& cert, const Character& chr) {
    Rational v = 1;
    for (const auto& f : cert.projector.terms.at(0).factors) v *= chr.value(f.gen) - f.shift;
    return v / cert.xi;
}

}  // namespace

SeparatorReport verify_e_theta(const TransferInstance& inst, const Character& theta,
                               const SeparatorCertificate& cert) {
    SeparatorReport rep;
    rep.c = cert.c;
    const Int p = inst.prime();
    const Int M = inst.capacity();
    const LogLinear l = inst.log_capacity();
    const Character pulled = dual_map(inst.phi(), theta);

    rep.xi_valuation = vp(cert.xi, p);
    rep.xi_bound_ok = rep.xi_valuation <= Val(Rational(M) * cert.m);

    rep.c_interval_ok =
        cert.c <= cert.m &&
        cmp_log_threshold(cert.c - cert.m, 0, -Rational(2 * M + 3) / 2, M, p) >= 0;

    rep.window_ok = true;
    for (const auto& w : obstructions(inst, theta)) {
        if (w < cert.c) continue;
        if (cmp_log_threshold(w - cert.c, 0, 1, M, p) <= 0) rep.window_ok = false;
    }

    rep.mult_h = reduced_multiplicity(inst.h(), theta, cert.c);
    rep.mult_h_prime = reduced_multiplicity(inst.h_prime(), pulled, cert.c);
    rep.trace_h_prime = trace(inst.h_prime(), cert.projector);
    rep.trace_h = trace(inst.h(), cert.projector.mapped(inst.phi()));
    rep.trace_h_prime_ok = geq(vp(rep.trace_h_prime - rep.mult_h_prime, p), l);
    rep.trace_h_ok = geq(vp(rep.trace_h - rep.mult_h, p), l);

    // per-block dichotomy: a block away from the class contributes exactly
    // zero; a block inside has constant diagonal congruent to 1
    rep.dichotomy_ok = true;
    const auto check_blocks = [&](const SyntheticHeckeModule& mod, const AlgebraElement& elt,
                                  const Character& center, bool pull_through) {
        for (size_t b = 0; b < mod.blocks().size(); ++b) {
            const Character& chr = mod.blocks()[b].character;
            const Rational block_trace = trace_on_block(mod, elt, b);
            const bool congruent_block =
                geq(char_distance_vp(chr, center), LogLinear::rational(cert.c));
            if (!congruent_block) {
                if (block_trace != 0) rep.dichotomy_ok = false;
                continue;
            }
            const Character at = pull_through ? dual_map(inst.phi(), chr) : chr;
            const Rational x = separator_value_at(cert, at);
            if (block_trace != Rational(mod.blocks()[b].dimension) * x)
                rep.dichotomy_ok = false;
            if (!geq(vp(x - 1, p), l)) rep.dichotomy_ok = false;
        }
    };
    check_blocks(inst.h_prime(), cert.projector, pulled, false);
    check_blocks(inst.h(), cert.projector.mapped(inst.phi()), theta, true);
    return rep;
}

namespace {

long multiplicity_from_trace(const Rational& tr, long dim_bound, const LogLinear& l,
                             const Int& p) {
    long found = -1;
    for (long k = 0; k <= dim_bound; ++k) {
        if (geq(vp(tr - k, p), l)) {
            if (found >= 0) throw error("trace determines no unique multiplicity");
            found = k;
        }
    }
    if (found < 0) throw error("no integer multiplicity matches the trace");
    return found;
}

}  // namespace

TransferOutcome transfer_exists(const TransferInstance& inst, const Character& theta,
                                const Rational& s) {
    const Int p = inst.prime();
    const Int M = inst.capacity();
    const auto lx = exact_log(M, p);
    if (!lx)
        throw config_invalid(
            "transfer criterion needs M = p^k so the derived level stays rational");
    const Rational l = *lx;
    const Rational m = (s - l) / Rational(M);

    TransferOutcome out;
    const SeparatorCertificate cert = build_e_theta(inst, theta, m);
    const SeparatorReport rep = verify_e_theta(inst, theta, cert);
    if (!rep.ok()) throw error("separator verification failed: " + rep.note);
    out.c = cert.c;
    out.bound_ok = cmp_log_threshold(out.c - s / Rational(M), 0, -Rational(M + 2), M, p) >= 0;

    out.mult_h_direct = rep.mult_h;
    out.mult_h_prime_direct = rep.mult_h_prime;
    out.mult_h_trace = multiplicity_from_trace(rep.trace_h, inst.h().dim(),
                                               inst.log_capacity(), p);
    out.mult_h_prime_trace = multiplicity_from_trace(rep.trace_h_prime, inst.h_prime().dim(),
                                                     inst.log_capacity(), p);
    out.routes_agree = out.mult_h_trace == out.mult_h_direct &&
                       out.mult_h_prime_trace == out.mult_h_prime_direct;
    out.multiplicities_equal = out.mult_h_direct == out.mult_h_prime_direct;

    // the probe set the argument consumes: the integral multiple xi*e(theta)
    // of the separator, every source generator, and their pairwise products
    std::vector<AlgebraElement> probes;
    probes.push_back(AlgebraElement::product(cert.projector.terms.at(0).factors, 1));
    const auto& src_ids = inst.phi().source().ids();
    for (const auto& id : src_ids) probes.push_back(AlgebraElement::generator(id));
    for (size_t a = 0; a < src_ids.size(); ++a)
        for (size_t b = a; b < src_ids.size(); ++b)
            probes.push_back(AlgebraElement::product(
                {LinearFactor{src_ids[a], 0}, LinearFactor{src_ids[b], 0}}, 1));
    out.hypothesis_ok = true;
    for (const auto& probe : probes) {
        const Rational lhs = trace(inst.h(), probe.mapped(inst.phi()));
        const Rational rhs = trace(inst.h_prime(), probe);
        if (!geq(vp(lhs - rhs, p), LogLinear::rational(s))) out.hypothesis_ok = false;
    }

    // mod p^c matching of eigencharacters
    out.matching_complete = true;
    for (const auto& [mu, mult] : eigencharacters_declared(inst.h())) {
        const Rational c_mu = find_gap_c(inst, mu, m);
        const Character pulled_mu = dual_map(inst.phi(), mu);
        bool found = false;
        for (const auto& [cand, cmult] : eigencharacters_declared(inst.h_prime())) {
            if (geq(char_distance_vp(cand, pulled_mu), LogLinear::rational(c_mu))) {
                out.matching.emplace_back(mu, cand);
                found = true;
                break;
            }
        }
        if (!found) out.matching_complete = false;
    }
    return out;
}

FamilyOutcome build_family(const std::vector<Weight>& weights,
                           const std::vector<SyntheticHeckeModule>& modules,
                           const Character& theta0, size_t lambda0_index, const Rational& a_coef,
                           const LogLinear& b_coef) {
    if (weights.size() != modules.size() || weights.empty())
        throw error("build_family: one module per weight required");
    if (lambda0_index >= weights.size()) throw error("build_family: bad start index");
    const Int p = modules[0].prime();

    // the initial character must occur in the initial module
    {
        bool occurs = false;
        for (const auto& [chr, mult] : eigencharacters_declared(modules[lambda0_index]))
            if (chr == theta0) occurs = true;
        if (!occurs)
            throw no_congruent_character("initial character not an eigencharacter at the seed");
    }

    FamilyOutcome out;
    out.members.resize(weights.size());
    std::vector<bool> placed(weights.size(), false);

    // weight classes mod (p-1)X(T); processing order: seed class first
    std::vector<size_t> order;
    order.push_back(lambda0_index);
    for (size_t i = 0; i < weights.size(); ++i)
        if (i != lambda0_index) order.push_back(i);

    for (const size_t start : order) {
        if (placed[start]) continue;
        // enumerate this class in input order, starting at `start`
        std::vector<size_t> cls{start};
        for (size_t i = 0; i < weights.size(); ++i)
            if (i != start && !placed[i] && same_weight_class(weights[i], weights[start], p))
                cls.push_back(i);

        out.members[start] =
            start == lambda0_index
                ? theta0
                : eigencharacters_declared(modules[start]).front().first;
        placed[start] = true;

        for (size_t step = 1; step < cls.size(); ++step) {
            const size_t next = cls[step];
            // attach to the placed weight of maximal congruence depth
            size_t anchor = cls[0];
            Val best = Val::neg_infinity();
            for (size_t prev = 0; prev < step; ++prev) {
                const Val d = vp_weight(weights[next], weights[cls[prev]], p);
                if (d > best) {
                    best = d;
                    anchor = cls[prev];
                }
            }
            bool found = false;
            for (const auto& [cand, mult] : eigencharacters_declared(modules[next])) {
                const Val dist = char_distance_vp(cand, out.members[anchor]);
                if (best.is_infinite() ? dist.is_infinite()
                                       : geq(dist, b_coef + a_coef * (best.finite() + 1))) {
                    out.members[next] = cand;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw no_congruent_character("no eigencharacter at weight index " +
                                             std::to_string(next) + " matches the anchor");
            placed[next] = true;
        }
    }

    // exhaustive pairwise verification of the family congruence
    for (size_t i = 0; i < weights.size(); ++i)
        for (size_t j = i + 1; j < weights.size(); ++j) {
            if (!same_weight_class(weights[i], weights[j], p)) continue;
            ++out.pairs_checked;
            const Val depth = vp_weight(weights[i], weights[j], p);
            const Val dist = char_distance_vp(out.members[i], out.members[j]);
            if (depth.is_infinite()) {
                if (!dist.is_infinite()) ++out.violations;
                continue;
            }
            if (!geq(dist, b_coef + a_coef * (depth.finite() + 1))) ++out.violations;
        }
    return out;
}

}  // namespace padlab
