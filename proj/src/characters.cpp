#include "padlab/characters.hpp"

#include <nlohmann/json.hpp>

#include <set>

namespace padlab {

GeneratorSet::GeneratorSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i], i).second)
            throw error("GeneratorSet: duplicate id " + ids_[i]);
    }
}

size_t GeneratorSet::index_of(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw generator_mismatch("unknown generator " + id);
    return it->second;
}

bool GeneratorSet::contains(const std::string& id) const { return index_.count(id) > 0; }

Character::Character(Int p, GeneratorSet gens, std::vector<Rational> values)
    : p_(std::move(p)), gens_(std::move(gens)), values_(std::move(values)) {
    if (values_.size() != gens_.size())
        throw generator_mismatch("character needs one value per generator");
    for (size_t i = 0; i < values_.size(); ++i)
        if (!p_integral(values_[i], p_))
            throw error("character value at " + gens_.id(i) + " is not integral at p: " +
                        values_[i].str());
}

const Rational& Character::value(const std::string& id) const {
    return values_[gens_.index_of(id)];
}

std::string Character::str() const {
    std::string s = "(";
    for (size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ", ";
        s += gens_.id(i) + "=" + values_[i].str();
    }
    return s + ")";
}

Val char_vp(const Character& theta) {
    Val v = Val::infinity();
    for (const auto& x : theta.values()) v = min(v, vp(x, theta.prime()));
    return v;
}

Val char_distance_vp(const Character& theta, const Character& mu) {
    if (theta.prime() != mu.prime()) throw generator_mismatch("characters over different primes");
    if (!(theta.generators() == mu.generators()))
        throw generator_mismatch("characters over different generator sets");
    Val v = Val::infinity();
    for (size_t i = 0; i < theta.values().size(); ++i)
        v = min(v, vp(theta.value_at(i) - mu.value_at(i), theta.prime()));
    return v;
}

bool char_congruent(const Character& theta, const Character& mu, const LogLinear& t) {
    return geq(char_distance_vp(theta, mu), t);
}

bool char_congruent(const Character& theta, const Character& mu, const Rational& t) {
    return char_congruent(theta, mu, LogLinear::rational(t));
}

GeneratorMap::GeneratorMap(GeneratorSet source, GeneratorSet target,
                           std::map<std::string, std::string> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    std::set<std::string> hit;
    for (const auto& id : source_.ids()) {
        const auto it = assignment_.find(id);
        if (it == assignment_.end())
            throw generator_mismatch("morphism misses source generator " + id);
        if (!target_.contains(it->second))
            throw generator_mismatch("morphism image " + it->second + " not in target");
        hit.insert(it->second);
    }
    if (hit.size() != target_.size())
        throw generator_mismatch("morphism is not surjective onto the target generators");
}

GeneratorMap GeneratorMap::identity(const GeneratorSet& gens) {
    std::map<std::string, std::string> a;
    for (const auto& id : gens.ids()) a[id] = id;
    return GeneratorMap(gens, gens, std::move(a));
}

const std::string& GeneratorMap::apply(const std::string& source_id) const {
    const auto it = assignment_.find(source_id);
    if (it == assignment_.end()) throw generator_mismatch("unknown source id " + source_id);
    return it->second;
}

Character dual_map(const GeneratorMap& phi, const Character& mu) {
    if (!(mu.generators() == phi.target()))
        throw generator_mismatch("dual_map: character not over the morphism target");
    std::vector<Rational> values;
    values.reserve(phi.source().size());
    for (const auto& id : phi.source().ids()) values.push_back(mu.value(phi.apply(id)));
    return Character(mu.prime(), phi.source(), std::move(values));
}

std::string character_to_json(const Character& theta) {
    nlohmann::ordered_json j;
    j["prime"] = theta.prime().str();
    j["generators"] = theta.generators().ids();
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (size_t i = 0; i < theta.generators().size(); ++i)
        vals[theta.generators().id(i)] = theta.value_at(i).str();
    j["values"] = vals;
    return j.dump();
}

Character character_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const Int p(j.at("prime").get<std::string>());
    GeneratorSet gens(j.at("generators").get<std::vector<std::string>>());
    std::vector<Rational> values;
    for (const auto& id : gens.ids())
        values.push_back(parse_rational(j.at("values").at(id).get<std::string>()));
    return Character(p, std::move(gens), std::move(values));
}

}  // namespace padlab
