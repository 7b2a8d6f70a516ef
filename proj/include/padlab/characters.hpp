#pragma once

#include <map>
#include <string>
#include <vector>

#include "padlab/logexpr.hpp"
#include "padlab/rational.hpp"

namespace padlab {

/// The active Hecke generators of an experiment.  The ambient algebra is a
/// polynomial algebra in countably many generators; a finite module only
/// sees finitely many of them, declared up front.
class GeneratorSet {
public:
    GeneratorSet() = default;
    explicit GeneratorSet(std::vector<std::string> ids);

    size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(size_t i) const { return ids_[i]; }
    size_t index_of(const std::string& id) const;
    bool contains(const std::string& id) const;

    bool operator==(const GeneratorSet& o) const { return ids_ == o.ids_; }

private:
    std::vector<std::string> ids_;
    std::map<std::string, size_t> index_;
};

/// An eigenvalue system: a character of the generator algebra with values
/// integral at p.
class Character {
public:
    Character() = default;
    Character(Int p, GeneratorSet gens, std::vector<Rational> values);

    const Int& prime() const { return p_; }
    const GeneratorSet& generators() const { return gens_; }
    const Rational& value(const std::string& id) const;
    const Rational& value_at(size_t i) const { return values_[i]; }
    const std::vector<Rational>& values() const { return values_; }

    bool operator==(const Character& o) const {
        return p_ == o.p_ && gens_ == o.gens_ && values_ == o.values_;
    }

    std::string str() const;

private:
    Int p_ = 2;
    GeneratorSet gens_;
    std::vector<Rational> values_;
};

/// v_p of a character: inf over active generators; +inf for the empty set.
Val char_vp(const Character& theta);

/// v_p(theta - mu): inf over generators of the valuation of the difference.
Val char_distance_vp(const Character& theta, const Character& mu);

/// theta ≡ mu (mod p^t)
bool char_congruent(const Character& theta, const Character& mu, const LogLinear& t);
bool char_congruent(const Character& theta, const Character& mu, const Rational& t);

/// A generator-to-generator algebra morphism, surjective onto the target
/// generators.
class GeneratorMap {
public:
    GeneratorMap() = default;
    GeneratorMap(GeneratorSet source, GeneratorSet target,
                 std::map<std::string, std::string> assignment);

    static GeneratorMap identity(const GeneratorSet& gens);

    const GeneratorSet& source() const { return source_; }
    const GeneratorSet& target() const { return target_; }
    const std::string& apply(const std::string& source_id) const;

private:
    GeneratorSet source_, target_;
    std::map<std::string, std::string> assignment_;
};

/// Pullback of a character along the morphism: (dual map)(mu) = mu ∘ Phi.
Character dual_map(const GeneratorMap& phi, const Character& mu);

std::string character_to_json(const Character& theta);
Character character_from_json(const std::string& text);

}  // namespace padlab
