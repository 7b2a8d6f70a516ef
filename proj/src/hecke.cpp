#include "padlab/hecke.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

#include "padlab/rng.hpp"

namespace padlab {

Matrix<long> BlockSpec::toeplitz_mask(long dim, const std::vector<long>& offsets) {
    Matrix<long> m(dim, dim, 0);
    for (const long k : offsets) {
        if (k < 1 || k >= dim) throw error("toeplitz_mask: offset out of range");
        for (long i = 0; i + k < dim; ++i) m(i, i + k) = 1;
    }
    return m;
}

namespace {

void validate_mask(const Matrix<long>& m, long dim) {
    if (m.rows() != dim || m.cols() != dim) throw error("mask shape mismatch");
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) {
            if (j <= i && m(i, j) != 0) throw error("mask not strictly upper triangular");
            if (m(i, j) != 0 && m(i, j) != 1) throw error("mask entries must be 0/1");
        }
}

QMatrix mask_to_q(const Matrix<long>& m) {
    QMatrix q(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
    return q;
}

}  // namespace

QMatrix SyntheticHeckeModule::block_matrix(size_t block, size_t gen_index) const {
    const BlockSpec& b = blocks_[block];
    QMatrix m = mask_to_q(b.masks[gen_index]);
    const Rational theta = b.character.value_at(gen_index);
    for (long i = 0; i < b.dimension; ++i) m(i, i) = theta;
    return m;
}

const QMatrix& SyntheticHeckeModule::action(const std::string& gen_id) const {
    return action_[gens_.index_of(gen_id)];
}

std::string SyntheticHeckeModule::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    const auto feed = [&h](const std::string& s) {
        for (const unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    feed(p_.str());
    for (const auto& id : gens_.ids()) feed(id);
    for (const auto& b : blocks_) {
        feed(std::to_string(b.dimension));
        for (const auto& v : b.character.values()) feed(v.str());
        for (const auto& m : b.masks)
            for (long i = 0; i < m.rows(); ++i)
                for (long j = 0; j < m.cols(); ++j) feed(std::to_string(m(i, j)));
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SyntheticHeckeModule synth_module(std::vector<BlockSpec> blocks, std::uint64_t seed) {
    if (blocks.empty()) throw error("synth_module: at least one block required");
    SyntheticHeckeModule h;
    h.p_ = blocks[0].character.prime();
    h.gens_ = blocks[0].character.generators();
    h.blocks_ = std::move(blocks);

    long dim = 0;
    for (const auto& b : h.blocks_) {
        if (b.dimension < 1) throw error("synth_module: block dimension must be >= 1");
        if (!(b.character.generators() == h.gens_) || b.character.prime() != h.p_)
            throw generator_mismatch("synth_module: blocks over different algebras");
        if (b.masks.size() != h.gens_.size())
            throw error("synth_module: one mask per generator required");
        for (const auto& m : b.masks) validate_mask(m, b.dimension);
        dim += b.dimension;
    }
    h.dim_ = dim;

    // per-block commutativity of the generator patterns
    for (size_t bi = 0; bi < h.blocks_.size(); ++bi) {
        for (size_t g1 = 0; g1 < h.gens_.size(); ++g1)
            for (size_t g2 = g1 + 1; g2 < h.gens_.size(); ++g2) {
                const QMatrix a = h.block_matrix(bi, g1);
                const QMatrix b = h.block_matrix(bi, g2);
                if (!(a * b == b * a))
                    throw error("synth_module: generator patterns of block " +
                                std::to_string(bi) + " do not commute");
            }
    }

    // unimodular integer scrambler from the seed
    Rng rng(seed);
    QMatrix u = QMatrix::identity(dim);
    QMatrix uinv = QMatrix::identity(dim);
    if (dim > 1) {
        const long ops = 2 * dim;
        for (long k = 0; k < ops; ++k) {
            const long i = rng.range(0, dim - 1);
            long j = rng.range(0, dim - 2);
            if (j >= i) ++j;
            const long mult = rng.coin() ? 1 : -1;
            // u := (I + mult*E_ij) u ;  uinv := uinv (I - mult*E_ij)
            for (long col = 0; col < dim; ++col) u(i, col) += mult * u(j, col);
            for (long row = 0; row < dim; ++row) uinv(row, j) -= mult * uinv(row, i);
        }
    }
    h.scrambler_ = u;
    h.scrambler_inv_ = uinv;

    for (size_t g = 0; g < h.gens_.size(); ++g) {
        QMatrix block_diag(dim, dim);
        long off = 0;
        for (size_t bi = 0; bi < h.blocks_.size(); ++bi) {
            const QMatrix bm = h.block_matrix(bi, g);
            for (long i = 0; i < bm.rows(); ++i)
                for (long j = 0; j < bm.cols(); ++j) block_diag(off + i, off + j) = bm(i, j);
            off += h.blocks_[bi].dimension;
        }
        h.action_.push_back(u * block_diag * uinv);
    }
    return h;
}

std::vector<std::pair<Character, long>> eigencharacters_declared(const SyntheticHeckeModule& h) {
    std::vector<std::pair<Character, long>> out;
    for (const auto& b : h.blocks()) {
        bool merged = false;
        for (auto& [chr, mult] : out)
            if (chr == b.character) {
                mult += b.dimension;
                merged = true;
                break;
            }
        if (!merged) out.emplace_back(b.character, b.dimension);
    }
    return out;
}

std::vector<std::pair<Character, long>> eigencharacters(const SyntheticHeckeModule& h) {
    const auto declared = eigencharacters_declared(h);

    // oracle 1: each generator's characteristic polynomial must factor as
    // prod (X - theta(g))^mult over the declared characters
    for (size_t g = 0; g < h.generators().size(); ++g) {
        Poly<Rational> expected = Poly<Rational>::constant(1);
        for (const auto& [chr, mult] : declared) {
            const Poly<Rational> lin(std::vector<Rational>{-chr.value_at(g), 1});
            expected = expected * lin.pow(static_cast<unsigned long>(mult));
        }
        const Poly<Rational> actual = char_poly(h.action_at(g));
        if (!(expected.coeffs() == actual.coeffs()))
            throw oracle_mismatch("characteristic polynomial of generator " +
                                  h.generators().id(g) + " disagrees with declared spectrum");
    }

    // oracle 2: simultaneous generalized kernel dimensions
    long total = 0;
    for (const auto& [chr, mult] : declared) {
        QMatrix stacked(h.dim() * static_cast<long>(h.generators().size()), h.dim());
        for (size_t g = 0; g < h.generators().size(); ++g) {
            QMatrix m = h.action_at(g);
            for (long i = 0; i < h.dim(); ++i) m(i, i) -= chr.value_at(g);
            m = m.pow(static_cast<unsigned long>(h.dim()));
            for (long i = 0; i < h.dim(); ++i)
                for (long j = 0; j < h.dim(); ++j)
                    stacked(static_cast<long>(g) * h.dim() + i, j) = m(i, j);
        }
        const long kdim = kernel_dimension(stacked);
        if (kdim != mult)
            throw oracle_mismatch("generalized kernel of " + chr.str() + " has dimension " +
                                  std::to_string(kdim) + ", declared " + std::to_string(mult));
        total += mult;
    }
    if (total != h.dim()) throw oracle_mismatch("multiplicities do not sum to dim");
    return declared;
}

long reduced_multiplicity(const SyntheticHeckeModule& h, const Character& theta,
                          const LogLinear& c) {
    long m = 0;
    for (const auto& [chr, mult] : eigencharacters_declared(h))
        if (geq(char_distance_vp(chr, theta), c)) m += mult;
    return m;
}

long reduced_multiplicity(const SyntheticHeckeModule& h, const Character& theta,
                          const Rational& c) {
    return reduced_multiplicity(h, theta, LogLinear::rational(c));
}

AlgebraElement AlgebraElement::one() {
    AlgebraElement e;
    e.terms.push_back(AlgebraTerm{});
    return e;
}

AlgebraElement AlgebraElement::generator(const std::string& id) {
    AlgebraElement e;
    e.terms.push_back(AlgebraTerm{1, {LinearFactor{id, 0}}});
    return e;
}

AlgebraElement AlgebraElement::product(std::vector<LinearFactor> factors, Rational denominator) {
    if (denominator == 0) throw error("AlgebraElement: zero denominator");
    AlgebraElement e;
    e.denominator = std::move(denominator);
    e.terms.push_back(AlgebraTerm{1, std::move(factors)});
    return e;
}

AlgebraElement AlgebraElement::mapped(const GeneratorMap& phi) const {
    AlgebraElement out = *this;
    for (auto& t : out.terms)
        for (auto& f : t.factors) f.gen = phi.apply(f.gen);
    return out;
}

AlgebraElement AlgebraElement::scaled(const Rational& s) const {
    AlgebraElement out = *this;
    for (auto& t : out.terms) t.coeff *= s;
    return out;
}

namespace {

template <typename MatrixOf>
Rational trace_with(const GeneratorSet& gens, long dim, const AlgebraElement& elt,
                    MatrixOf&& matrix_of) {
    Rational total = 0;
    for (const auto& term : elt.terms) {
        QMatrix acc = QMatrix::identity(dim);
        for (const auto& f : term.factors) {
            QMatrix m = matrix_of(gens.index_of(f.gen));
            for (long i = 0; i < dim; ++i) m(i, i) -= f.shift;
            acc = acc * m;
        }
        total += term.coeff * acc.trace();
    }
    return total / elt.denominator;
}

}  // namespace

Rational trace(const SyntheticHeckeModule& h, const AlgebraElement& elt) {
    return trace_with(h.generators(), h.dim(), elt,
                      [&](size_t g) { return h.action_at(g); });
}

Rational trace_on_block(const SyntheticHeckeModule& h, const AlgebraElement& elt, size_t block) {
    return trace_with(h.generators(), h.blocks()[block].dimension, elt,
                      [&](size_t g) { return h.block_matrix(block, g); });
}

std::string module_to_json(const SyntheticHeckeModule& h, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["prime"] = h.prime().str();
    j["generators"] = h.generators().ids();
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& b : h.blocks()) {
        nlohmann::ordered_json jb;
        nlohmann::ordered_json vals = nlohmann::ordered_json::object();
        for (size_t g = 0; g < h.generators().size(); ++g)
            vals[h.generators().id(g)] = b.character.value_at(g).str();
        jb["values"] = vals;
        jb["dim"] = b.dimension;
        nlohmann::ordered_json masks = nlohmann::ordered_json::object();
        for (size_t g = 0; g < h.generators().size(); ++g) {
            auto rows = nlohmann::ordered_json::array();
            for (long i = 0; i < b.dimension; ++i) {
                auto row = nlohmann::ordered_json::array();
                for (long jj = 0; jj < b.dimension; ++jj) row.push_back(b.masks[g](i, jj));
                rows.push_back(row);
            }
            masks[h.generators().id(g)] = rows;
        }
        jb["mask"] = masks;
        blocks.push_back(jb);
    }
    j["blocks"] = blocks;
    j["seed"] = seed;
    return j.dump();
}

SyntheticHeckeModule module_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const Int p(j.at("prime").get<std::string>());
    GeneratorSet gens(j.at("generators").get<std::vector<std::string>>());
    std::vector<BlockSpec> blocks;
    for (const auto& jb : j.at("blocks")) {
        BlockSpec b;
        b.dimension = jb.at("dim").get<long>();
        std::vector<Rational> values;
        for (const auto& id : gens.ids())
            values.push_back(parse_rational(jb.at("values").at(id).get<std::string>()));
        b.character = Character(p, gens, std::move(values));
        for (const auto& id : gens.ids()) {
            Matrix<long> m(b.dimension, b.dimension, 0);
            const auto& rows = jb.at("mask").at(id);
            for (long i = 0; i < b.dimension; ++i)
                for (long jj = 0; jj < b.dimension; ++jj)
                    m(i, jj) = rows.at(static_cast<size_t>(i)).at(static_cast<size_t>(jj)).get<long>();
            b.masks.push_back(std::move(m));
        }
        blocks.push_back(std::move(b));
    }
    return synth_module(std::move(blocks), j.at("seed").get<std::uint64_t>());
}

}  // namespace padlab
