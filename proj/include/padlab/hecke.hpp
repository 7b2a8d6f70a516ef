#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padlab/characters.hpp"
#include "padlab/matrix.hpp"

namespace padlab {

/// One generalized eigenblock of a synthetic module: a character, a
/// dimension, and per generator a strictly-upper-triangular 0/1 nilpotent
/// pattern.  The patterns of one block must commute pairwise so the
/// generator matrices commute.
struct BlockSpec {
    Character character;
    long dimension = 1;
    std::vector<Matrix<long>> masks;  // one per generator, dim x dim, strictly upper

    /// Patterns supported by the random generator: sums of powers of the
    /// full superdiagonal Jordan nilpotent (all such masks commute).
    static Matrix<long> toeplitz_mask(long dim, const std::vector<long>& offsets);
};

/// A finite-dimensional module over the polynomial Hecke algebra with
/// commuting generator action, integral at p, and known eigenstructure.
/// The public matrices are conjugated by a unimodular integer change of
/// basis; the block data is the ground truth behind them.
class SyntheticHeckeModule {
public:
    SyntheticHeckeModule() = default;

    const Int& prime() const { return p_; }
    const GeneratorSet& generators() const { return gens_; }
    long dim() const { return dim_; }
    const std::vector<BlockSpec>& blocks() const { return blocks_; }
    const QMatrix& action(const std::string& gen_id) const;
    const QMatrix& action_at(size_t gen_index) const { return action_[gen_index]; }
    const QMatrix& scrambler() const { return scrambler_; }
    const QMatrix& scrambler_inverse() const { return scrambler_inv_; }

    /// Ground-truth block matrix of one generator (upper triangular with
    /// constant diagonal).
    QMatrix block_matrix(size_t block, size_t gen_index) const;

    std::string digest() const;

    friend SyntheticHeckeModule synth_module(std::vector<BlockSpec> blocks, std::uint64_t seed);

private:
    Int p_ = 2;
    GeneratorSet gens_;
    long dim_ = 0;
    std::vector<BlockSpec> blocks_;
    std::vector<QMatrix> action_;
    QMatrix scrambler_, scrambler_inv_;
};

/// Realize the prescribed blocks as commuting scrambled matrices.  The
/// scrambler is a product of elementary integer matrices of determinant
/// ±1, drawn from the seed, so the integral lattice is preserved.
SyntheticHeckeModule synth_module(std::vector<BlockSpec> blocks, std::uint64_t seed);

/// Ground-truth eigencharacters with multiplicities, cross-checked against
/// an independent oracle (per-generator characteristic polynomials and
/// simultaneous generalized kernel dimensions).  Throws oracle_mismatch
/// if the two disagree.
std::vector<std::pair<Character, long>> eigencharacters(const SyntheticHeckeModule& h);

/// Ground truth only, no oracle pass (used where the oracle already ran).
std::vector<std::pair<Character, long>> eigencharacters_declared(const SyntheticHeckeModule& h);

/// Sum of dim H(mu) over eigencharacters mu congruent to theta mod p^c.
long reduced_multiplicity(const SyntheticHeckeModule& h, const Character& theta,
                          const LogLinear& c);
long reduced_multiplicity(const SyntheticHeckeModule& h, const Character& theta,
                          const Rational& c);

/// Formal element of the algebra (with an optional scalar denominator):
/// (1/denominator) * sum of coeff * prod (T_gen - shift).
struct LinearFactor {
    std::string gen;
    Rational shift;
};

struct AlgebraTerm {
    Rational coeff = 1;
    std::vector<LinearFactor> factors;  // empty product = 1
};

struct AlgebraElement {
    Rational denominator = 1;
    std::vector<AlgebraTerm> terms;

    static AlgebraElement one();
    static AlgebraElement generator(const std::string& id);
    static AlgebraElement product(std::vector<LinearFactor> factors, Rational denominator);

    /// Push the element through a generator morphism (source ids replaced
    /// by their images).
    AlgebraElement mapped(const GeneratorMap& phi) const;

    /// Multiply by a scalar xi (clears the denominator when xi=denominator).
    AlgebraElement scaled(const Rational& s) const;
};

/// Trace of the evaluated matrix polynomial on the module.
Rational trace(const SyntheticHeckeModule& h, const AlgebraElement& elt);

/// Trace restricted to one ground-truth block.
Rational trace_on_block(const SyntheticHeckeModule& h, const AlgebraElement& elt, size_t block);

std::string module_to_json(const SyntheticHeckeModule& h, std::uint64_t seed);
SyntheticHeckeModule module_from_json(const std::string& text);

}  // namespace padlab
