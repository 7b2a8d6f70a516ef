#pragma once

#include "padlab/hecke.hpp"
#include "padlab/transfer.hpp"

namespace padlab {

/// Step-function bound alpha -> M(alpha), even and non-decreasing.
class MBound {
public:
    MBound() = default;
    explicit MBound(std::vector<std::pair<Rational, Int>> steps);
    static MBound constant(const Int& m) { return MBound({{Rational(0), m}}); }

    Int at(const Rational& alpha) const;
    const std::vector<std::pair<Rational, Int>>& steps() const { return steps_; }

private:
    std::vector<std::pair<Rational, Int>> steps_;  // sorted by threshold
};

/// Eigenvalues of the designated operator with their valuations and
/// generalized-eigenspace dimensions.
struct SlopeProfile {
    std::string op_id;
    std::vector<std::tuple<Rational, Val, long>> rows;  // eigenvalue, valuation, dim

    std::string csv() const;
};

SlopeProfile slope_profile(const SyntheticHeckeModule& h, const std::string& op_id);

struct SlopeSubspace {
    long dimension = 0;
    std::vector<Rational> eigenvalues;  // distinct values of the designated operator
};

/// Generalized eigenspaces of the designated operator with eigenvalue
/// valuation equal to alpha (exact) or at most alpha.
SlopeSubspace slope_subspace(const SyntheticHeckeModule& h, const std::string& op_id,
                             const Rational& alpha, bool at_most);

/// The polynomial 1 - prod over the low-slope eigenvalues of both modules
/// of (X - mu)/(-mu); evaluating it at the designated operator gives the
/// approximate low-slope projector.
Poly<Rational> approx_idempotent(const SyntheticHeckeModule& h, const SyntheticHeckeModule& h2,
                                 const std::string& op_id, const Rational& alpha);

struct ProjectorPropertyReport {
    bool high_blocks_small = false;   // diagonal valuation >= 2/M(alpha+1) off the low part
    bool low_blocks_one = false;      // diagonal exactly 1 on the low part
    bool degree_ok = false;           // deg <= M(alpha)
    bool vanishes_at_zero = false;
    bool slope_bound_ok = false;      // S(p) >= -alpha
    bool power_coefficients_ok = false;  // p^L = sum_{h>=L} b_h X^h, v(b_h) >= -h alpha
    bool quantization_ok = false;     // low eigenvalue valuations in (2/M(alpha+1)) N_0
    bool dimension_bound_ok = false;  // dim H^{<=a} <= M(a)/2 at a = alpha, alpha+1
    std::string note;

    bool ok() const {
        return high_blocks_small && low_blocks_one && degree_ok && vanishes_at_zero &&
               slope_bound_ok && power_coefficients_ok && quantization_ok && dimension_bound_ok;
    }
};

ProjectorPropertyReport check_projector_properties(const SyntheticHeckeModule& h,
                                                   const SyntheticHeckeModule& h2,
                                                   const std::string& op_id,
                                                   const Rational& alpha, const MBound& m,
                                                   long max_power = 10);

struct SlopeTraceReport {
    Rational truncated_trace;  // tr(T elt * e^L | H)
    Rational low_trace;        // tr(T elt | H^{<= alpha})
    Val difference_valuation;
    Rational threshold;        // 2L / M(alpha+1)
    bool ok = false;
};

/// tr(T (e^{<=alpha})^L | H) ≡ tr(T | H^{<=alpha}) mod p^(2L/M(alpha+1)).
SlopeTraceReport trace_congruence(const SyntheticHeckeModule& h, const SyntheticHeckeModule& h2,
                                  const std::string& op_id, const AlgebraElement& elt,
                                  const Rational& alpha, long power, const MBound& m);

struct PipelineReport {
    LogLinear constancy_modulus;           // D(alpha)
    bool probe_congruences_ok = false;     // the pair hypothesis on the probe set
    bool constancy_ok = false;             // dim H^alpha locally constant at depth D
    bool low_constancy_ok = false;         // dim H^{<=alpha} locally constant at depth D
    std::vector<Rational> slopes_seen;     // slope set stabilization record
    FamilyOutcome family;                  // slope-alpha members
    bool family_ok = false;
    long pairs_examined = 0;
    std::string note;

    bool ok() const {
        return probe_congruences_ok && constancy_ok && low_constancy_ok && family_ok;
    }
};

/// The finite-slope family pipeline: verify the pairwise trace hypothesis
/// on a probe set, check local constancy of the slope dimensions with the
/// derived modulus, restrict to the exact slope, and build the family with
/// the derived coefficients.
PipelineReport slope_family_pipeline(const std::vector<Weight>& weights,
                                     const std::vector<SyntheticHeckeModule>& modules,
                                     const std::string& op_id, const Rational& alpha,
                                     const Rational& a_prime, const Rational& a,
                                     const Rational& b, const MBound& m);

}  // namespace padlab
