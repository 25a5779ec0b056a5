#include "gtcf/marked_group.hpp"

#include "gtcf/errors.hpp"

#include <algorithm>
#include <map>

namespace gtcf::groups {

std::string kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::Free: return "free";
        case GroupKind::Finite: return "finite";
        case GroupKind::TreeAmalgam: return "tree-amalgam";
        case GroupKind::Hnn: return "hnn";
        case GroupKind::GraphOfGroups: return "graph-of-groups";
        case GroupKind::Product: return "product";
    }
    return "?";
}

namespace {

class FreeOracle final : public WordOracle {
public:
    explicit FreeOracle(Alphabet a) : alphabet_(std::move(a)) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string certificate() const override { return "free-reduction"; }

    Word normal_form(const Word& w) const override {
        Word out;
        for (const auto& l : w) {
            if (!out.empty() && out.back().id == l.id && out.back().exp == -l.exp)
                out.pop_back();
            else
                out.push_back(l);
        }
        return out;
    }

private:
    Alphabet alphabet_;
};

// Letters are the non-identity elements; letter k is element k + 1.
class FiniteOracle final : public WordOracle {
public:
    explicit FiniteOracle(FiniteGroup g) : group_(std::move(g)) {
        std::vector<std::string> names(group_.elems().begin() + 1, group_.elems().end());
        alphabet_ = Alphabet(std::move(names));
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string certificate() const override { return "finite-table"; }

    Word normal_form(const Word& w) const override {
        uint32_t acc = 0;
        for (const auto& l : w) {
            uint32_t e = l.id + 1;
            if (l.exp < 0) e = group_.inv(e);
            acc = group_.mul(acc, e);
        }
        if (acc == 0) return {};
        return {WLetter{acc - 1, 1}};
    }

private:
    FiniteGroup group_;
    Alphabet alphabet_;
};

// F_n x G0: free letters first, then the non-identity elements of G0.
class ProductOracle final : public WordOracle {
public:
    ProductOracle(unsigned rank, FiniteGroup g0, Alphabet a)
        : rank_(rank), group_(std::move(g0)), alphabet_(std::move(a)) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string certificate() const override { return "free-reduction+finite-table"; }

    Word normal_form(const Word& w) const override {
        Word free_part;
        uint32_t acc = 0;
        for (const auto& l : w) {
            if (l.id < rank_) {
                if (!free_part.empty() && free_part.back().id == l.id &&
                    free_part.back().exp == -l.exp)
                    free_part.pop_back();
                else
                    free_part.push_back(l);
            } else {
                uint32_t e = l.id - rank_ + 1;
                if (l.exp < 0) e = group_.inv(e);
                acc = group_.mul(acc, e);
            }
        }
        if (acc != 0) free_part.push_back(WLetter{rank_ + acc - 1, 1});
        return free_part;
    }

private:
    uint32_t rank_;
    FiniteGroup group_;
    Alphabet alphabet_;
};

// Z x| C2 with s the translation and t the reflection: every element is
// s^k t^eps, multiplication through the faithful affine action x -> ±x + k.
class DihedralOracle final : public WordOracle {
public:
    DihedralOracle() : alphabet_(std::vector<std::string>{"sigma", "tau"}) {}

    const Alphabet& alphabet() const override { return alphabet_; }
    std::string certificate() const override { return "affine-normal-form"; }

    Word normal_form(const Word& w) const override {
        long k = 0;
        int eps = 0;
        for (const auto& l : w) {
            long dk = 0;
            int de = 0;
            if (l.id == 0)
                dk = l.exp;
            else
                de = 1;
            k += (eps ? -dk : dk);
            eps ^= de;
        }
        Word out;
        for (long i = 0; i < (k < 0 ? -k : k); ++i)
            out.push_back(WLetter{0, static_cast<int8_t>(k < 0 ? -1 : 1)});
        if (eps) out.push_back(WLetter{1, 1});
        return out;
    }

private:
    Alphabet alphabet_;
};

} // namespace

int MarkedGroup::rho_index_of(const Word& w) const {
    Word nf = oracle->normal_form(w);
    for (size_t i = 0; i < rho.size(); ++i)
        if (oracle->normal_form(rho[i]) == nf) return static_cast<int>(i);
    return -1;
}

MarkedGroup marked_free_group(unsigned rank) {
    if (rank == 0) throw ValidationError("free rank must be positive");
    std::vector<std::string> names;
    if (rank == 1)
        names.push_back("sigma");
    else
        for (unsigned i = 1; i <= rank; ++i) names.push_back("sigma" + std::to_string(i));
    MarkedGroup m;
    m.kind = GroupKind::Free;
    m.free_rank = rank;
    m.oracle = std::make_shared<FreeOracle>(Alphabet(names));
    m.rho.push_back({});
    for (unsigned i = 0; i < rank; ++i) m.rho.push_back({WLetter{i, 1}});
    validate_marking(m);
    return m;
}

MarkedGroup marked_finite_group(FiniteGroup g) {
    MarkedGroup m;
    m.kind = GroupKind::Finite;
    m.finite = g;
    m.oracle = std::make_shared<FiniteOracle>(g);
    m.rho.push_back({});
    for (uint32_t i = 1; i < g.size(); ++i) m.rho.push_back({WLetter{i - 1, 1}});
    validate_marking(m);
    return m;
}

MarkedGroup marked_product_group(unsigned rank, FiniteGroup g0) {
    if (rank == 0) throw ValidationError("free rank must be positive");
    std::vector<std::string> names;
    if (rank == 1)
        names.push_back("sigma");
    else
        for (unsigned i = 1; i <= rank; ++i) names.push_back("sigma" + std::to_string(i));
    for (uint32_t i = 1; i < g0.size(); ++i) names.push_back(g0.name(i));
    MarkedGroup m;
    m.kind = GroupKind::Product;
    m.product = ProductMarking{false, rank, g0};
    m.oracle = std::make_shared<ProductOracle>(rank, g0, Alphabet(names));
    // rho = (g_a, sigma_1 g_a, ..., sigma_n g_a) for each a, identity block first.
    for (uint32_t a = 0; a < g0.size(); ++a) {
        Word ga;
        if (a != 0) ga.push_back(WLetter{rank + a - 1, 1});
        m.rho.push_back(ga);
        for (unsigned i = 0; i < rank; ++i)
            m.rho.push_back(word_concat({WLetter{i, 1}}, ga));
    }
    validate_marking(m);
    return m;
}

MarkedGroup marked_dihedral_group() {
    MarkedGroup m;
    m.kind = GroupKind::Product;
    m.product = ProductMarking{true, 1, FiniteGroup::cyclic(2, {"1", "tau"})};
    m.oracle = std::make_shared<DihedralOracle>();
    m.identity_index = 1;
    const WLetter s{0, 1}, si{0, -1}, t{1, 1};
    m.rho = {Word{si}, Word{}, Word{s}, Word{si, t}, Word{t}, Word{s, t}};
    validate_marking(m);
    return m;
}

void validate_marking(const MarkedGroup& m) {
    if (!m.oracle) throw ValidationError("marked group lacks a word oracle");
    if (m.rho.empty()) throw ValidationError("empty marking tuple");
    if (m.identity_index >= m.rho.size())
        throw ValidationError("identity index outside the marking tuple");
    size_t nletters = m.alphabet().size();
    for (const auto& w : m.rho)
        for (const auto& l : w)
            if (l.id >= nletters || (l.exp != 1 && l.exp != -1))
                throw ValidationError("marking word uses an invalid letter");
    if (!m.oracle->is_identity(m.rho[m.identity_index]))
        throw ValidationError("rho entry " + std::to_string(m.identity_index + 1) +
                              " is not the identity");
    std::vector<Word> nfs;
    for (const auto& w : m.rho) nfs.push_back(m.oracle->normal_form(w));
    for (size_t i = 0; i < nfs.size(); ++i)
        for (size_t j = i + 1; j < nfs.size(); ++j)
            if (nfs[i] == nfs[j])
                throw ValidationError("marking entries " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " coincide");
}

std::vector<int> left_mul_permutation(const MarkedGroup& m, const Word& w) {
    std::map<std::string, size_t> nf_index;
    for (size_t i = 0; i < m.rho.size(); ++i)
        nf_index[m.alphabet().render(m.oracle->normal_form(m.rho[i]))] = i;
    std::vector<int> out(m.rho.size(), -1);
    for (size_t j = 0; j < m.rho.size(); ++j) {
        Word p = m.oracle->normal_form(word_concat(w, m.rho[j]));
        auto it = nf_index.find(m.alphabet().render(p));
        if (it != nf_index.end()) out[j] = static_cast<int>(it->second);
    }
    return out;
}

std::vector<std::vector<Word>> rho_product_matrix(const MarkedGroup& m) {
    size_t n = m.rho.size();
    std::vector<std::vector<Word>> out(n, std::vector<Word>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out[i][j] = m.oracle->normal_form(word_concat(m.rho[i], m.rho[j]));
    return out;
}

size_t DiagonalClasses::nontrivial_count() const {
    size_t n = 0;
    for (const auto& c : classes)
        if (c.size() > 1) ++n;
    return n;
}

DiagonalClasses diagonal_classes(const MarkedGroup& m) {
    auto matrix = rho_product_matrix(m);
    DiagonalClasses dc;
    dc.m = m.rho.size();
    dc.class_of.assign(dc.m, std::vector<size_t>(dc.m, 0));
    std::map<std::string, size_t> by_word;
    for (size_t i = 0; i < dc.m; ++i)
        for (size_t j = 0; j < dc.m; ++j) {
            std::string key = m.alphabet().render(matrix[i][j]);
            auto it = by_word.find(key);
            size_t cls;
            if (it == by_word.end()) {
                cls = dc.classes.size();
                by_word.emplace(key, cls);
                dc.classes.emplace_back();
                dc.reps.push_back(matrix[i][j]);
            } else {
                cls = it->second;
            }
            dc.classes[cls].emplace_back(i, j);
            dc.class_of[i][j] = cls;
        }
    return dc;
}

} // namespace gtcf::groups
