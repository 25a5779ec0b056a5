#include "gtcf/groebner.hpp"

#include "gtcf/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace gtcf::algebra {

MonOrder MonOrder::lex(size_t nvars) {
    MonOrder ord;
    ord.priority_.resize(nvars);
    for (size_t i = 0; i < nvars; ++i) ord.priority_[i] = i;
    ord.key_ = "lex";
    return ord;
}

MonOrder MonOrder::elimination(const std::vector<bool>& eliminate) {
    MonOrder ord;
    std::ostringstream key;
    key << "elim:";
    for (size_t i = 0; i < eliminate.size(); ++i)
        if (eliminate[i]) {
            ord.priority_.push_back(i);
            key << i << ",";
        }
    for (size_t i = 0; i < eliminate.size(); ++i)
        if (!eliminate[i]) ord.priority_.push_back(i);
    ord.key_ = key.str();
    return ord;
}

int MonOrder::cmp(const Mono& a, const Mono& b) const {
    for (size_t i : priority_) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

std::pair<Mono, FieldElem> leading_term(const Poly& p, const MonOrder& ord) {
    if (p.is_zero()) throw ValidationError("leading term of the zero polynomial");
    auto it = p.terms().begin();
    auto best = it;
    for (++it; it != p.terms().end(); ++it)
        if (ord.greater(it->first, best->first)) best = it;
    return {best->first, best->second};
}

namespace {

// p - c * x^m * g, the elementary division step.
Poly subtract_multiple(const Poly& p, const FieldElem& c, const Mono& m, const Poly& g) {
    const auto& f = p.ring()->field();
    Poly r = p;
    for (const auto& [gm, gc] : g.terms()) r.add_term(mono_mul(m, gm), f.neg(f.mul(c, gc)));
    return r;
}

} // namespace

Poly reduce(const Poly& p, const std::vector<Poly>& basis, const MonOrder& ord) {
    const auto& f = p.ring()->field();
    Poly cur = p;
    Poly rem = Poly::zero(p.ring());
    while (!cur.is_zero()) {
        auto [m, c] = leading_term(cur, ord);
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            auto [gm, gc] = leading_term(g, ord);
            if (!mono_divides(gm, m)) continue;
            cur = subtract_multiple(cur, f.div(c, gc), mono_div(m, gm), g);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(m, c);
            cur.add_term(m, f.neg(c));
        }
    }
    return rem;
}

namespace {

struct Gen {
    Poly p;
    Mono lt;
    FieldElem lc;
    unsigned sugar;
};

struct PairKey {
    unsigned sugar;
    Mono lcm;
    size_t i, j;
};

struct PairCmp {
    const MonOrder* ord;
    bool operator()(const PairKey& a, const PairKey& b) const {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = ord->cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

} // namespace

std::vector<Poly> groebner(const RingPtr& ring, std::vector<Poly> gens, const MonOrder& ord,
                           const Limits& limits) {
    const auto& f = ring->field();
    std::vector<Gen> basis;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        auto [m, c] = leading_term(g, ord);
        basis.push_back(Gen{g.scaled(f.inv(c)), m, f.one(), g.degree()});
    }

    std::set<PairKey, PairCmp> queue(PairCmp{&ord});
    std::set<std::pair<size_t, size_t>> handled;
    auto push_pair = [&](size_t i, size_t j) {
        Mono lcm = mono_lcm(basis[i].lt, basis[j].lt);
        unsigned sug = std::max(basis[i].sugar + mono_degree(lcm) - mono_degree(basis[i].lt),
                                basis[j].sugar + mono_degree(lcm) - mono_degree(basis[j].lt));
        queue.insert(PairKey{sug, std::move(lcm), i, j});
    };
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);

    while (!queue.empty()) {
        PairKey pk = *queue.begin();
        queue.erase(queue.begin());
        handled.insert({pk.i, pk.j});

        // Buchberger's first criterion: coprime leading terms.
        if (pk.lcm == mono_mul(basis[pk.i].lt, basis[pk.j].lt)) continue;
        // Chain criterion: some k divides the lcm and both side pairs are done.
        bool skip = false;
        for (size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pk.i || k == pk.j) continue;
            if (!mono_divides(basis[k].lt, pk.lcm)) continue;
            auto key1 = std::minmax(pk.i, k);
            auto key2 = std::minmax(pk.j, k);
            if (handled.count({key1.first, key1.second}) && handled.count({key2.first, key2.second}))
                skip = true;
        }
        if (skip) continue;

        const Gen& gi = basis[pk.i];
        const Gen& gj = basis[pk.j];
        Poly spoly = subtract_multiple(
            Poly::zero(ring), f.neg(f.one()), mono_div(pk.lcm, gi.lt), gi.p);
        spoly = subtract_multiple(spoly, f.one(), mono_div(pk.lcm, gj.lt), gj.p);

        std::vector<Poly> plain;
        plain.reserve(basis.size());
        for (const auto& g : basis) plain.push_back(g.p);
        Poly r = reduce(spoly, plain, ord);
        if (r.is_zero()) continue;

        if (limits.max_degree != 0 && r.degree() > limits.max_degree)
            throw ResourceLimit("groebner degree bound " + std::to_string(limits.max_degree) +
                                " exceeded");
        if (basis.size() + 1 > limits.max_basis)
            throw ResourceLimit("groebner basis size bound exceeded");

        auto [m, c] = leading_term(r, ord);
        unsigned sug = std::max(pk.sugar, r.degree());
        basis.push_back(Gen{r.scaled(f.inv(c)), m, f.one(), sug});
        for (size_t i = 0; i + 1 < basis.size(); ++i) push_pair(i, basis.size() - 1);
    }

    // Minimalize: drop generators whose leading term another one divides.
    std::vector<bool> keep(basis.size(), true);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (mono_divides(basis[j].lt, basis[i].lt) &&
                !(basis[i].lt == basis[j].lt && j > i))
                keep[i] = false;
        }
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(basis[i].p);

    // Tail-reduce every generator against the others until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            others.reserve(minimal.size() - 1);
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly r = reduce(minimal[i], others, ord);
            if (r != minimal[i]) {
                changed = true;
                if (r.is_zero()) {
                    minimal.erase(minimal.begin() + static_cast<long>(i));
                    --i;
                } else {
                    auto [m, c] = leading_term(r, ord);
                    minimal[i] = r.scaled(f.inv(c));
                }
            }
        }
    }

    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return ord.cmp(leading_term(a, ord).first, leading_term(b, ord).first) < 0;
    });

#ifndef NDEBUG
    // In test builds, confirm every S-polynomial of the final basis drops to
    // zero; this is the defining property of the output.
    if (minimal.size() <= 48) {
        for (size_t i = 0; i < minimal.size(); ++i)
            for (size_t j = i + 1; j < minimal.size(); ++j) {
                auto [mi, ci] = leading_term(minimal[i], ord);
                auto [mj, cj] = leading_term(minimal[j], ord);
                Mono lcm = mono_lcm(mi, mj);
                Poly s = subtract_multiple(Poly::zero(ring), f.neg(f.inv(ci)),
                                           mono_div(lcm, mi), minimal[i]);
                s = subtract_multiple(s, f.inv(cj), mono_div(lcm, mj), minimal[j]);
                assert(reduce(s, minimal, ord).is_zero());
            }
    }
#endif
    return minimal;
}

Ideal::Ideal(RingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g.ring()->same_as(*ring_))
            throw ValidationError("ideal generator lives in a different ring");
        gens_.push_back(std::move(g));
    }
}

Ideal Ideal::with_known_basis(RingPtr ring, std::vector<Poly> basis, const MonOrder& ord) {
    Ideal ideal(std::move(ring), basis);
    ideal.cache_[ord.key()] = std::move(basis);
    return ideal;
}

const std::vector<Poly>& Ideal::basis(const MonOrder& ord, const Limits& limits) const {
    auto it = cache_.find(ord.key());
    if (it != cache_.end()) return it->second;
    auto gb = groebner(ring_, gens_, ord, limits);
    return cache_.emplace(ord.key(), std::move(gb)).first->second;
}

const std::vector<Poly>& Ideal::lex_basis(const Limits& limits) const {
    return basis(MonOrder::lex(ring_->nvars()), limits);
}

bool Ideal::contains(const Poly& p, const Limits& limits) const {
    if (p.is_zero()) return true;
    MonOrder ord = MonOrder::lex(ring_->nvars());
    return reduce(p, basis(ord, limits), ord).is_zero();
}

bool Ideal::is_trivial(const Limits& limits) const {
    const auto& b = lex_basis(limits);
    return b.size() == 1 && b[0].degree() == 0;
}

bool Ideal::is_zero_ideal() const { return gens_.empty(); }

bool ideal_equal(const Ideal& a, const Ideal& b, const Limits& limits) {
    if (!a.ring()->same_as(*b.ring()))
        throw ValidationError("ideal comparison across different ambient rings");
    return a.lex_basis(limits) == b.lex_basis(limits);
}

Ideal eliminate(const Ideal& ideal, const std::vector<bool>& keep, const Limits& limits) {
    const auto& ring = ideal.ring();
    if (keep.size() != ring->nvars())
        throw ValidationError("eliminate: keep mask does not match ring width");
    std::vector<bool> elim(keep.size());
    std::vector<std::string> sub_vars;
    std::vector<size_t> sub_index;
    for (size_t i = 0; i < keep.size(); ++i) {
        elim[i] = !keep[i];
        if (keep[i]) {
            sub_vars.push_back(ring->vars()[i]);
            sub_index.push_back(i);
        }
    }
    RingPtr sub = PolyRing::make(ring->field(), sub_vars);

    MonOrder ord = MonOrder::elimination(elim);
    const auto& gb = ideal.basis(ord, limits);
    std::vector<Poly> kept;
    for (const auto& g : gb) {
        if (!g.supported_on(keep)) continue;
        Poly q = Poly::zero(sub);
        for (const auto& [m, c] : g.terms()) {
            Mono sm(sub_index.size(), 0);
            for (size_t k = 0; k < sub_index.size(); ++k) sm[k] = m[sub_index[k]];
            q.add_term(sm, c);
        }
        kept.push_back(std::move(q));
    }
    // The filtered generators are already the reduced lex basis downstairs.
    return Ideal::with_known_basis(sub, std::move(kept), MonOrder::lex(sub->nvars()));
}

Ideal apply_field_aut(const Ideal& ideal, const FieldAut& aut) {
    std::vector<Poly> gens;
    gens.reserve(ideal.gens().size());
    for (const auto& g : ideal.gens()) gens.push_back(apply_field_aut(g, aut));
    return Ideal(ideal.ring(), std::move(gens));
}

} // namespace gtcf::algebra
