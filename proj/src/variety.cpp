#include "gtcf/variety.hpp"

#include "gtcf/errors.hpp"
#include "gtcf/parse.hpp"

#include <algorithm>

namespace gtcf::variety {

using algebra::PolyRing;
using algebra::apply_field_aut;
using algebra::apply_hom;
using algebra::ideal_equal;

FieldAut GField::act(const Word& w) const {
    FieldAut acc = base.aut(1);
    for (const auto& l : w) {
        FieldAut a = letter_act.at(l.id);
        if (l.exp < 0)
            a = base.aut_inverse(a);
        acc = base.compose(acc, a);
    }
    return acc;
}

GFieldPtr make_gfield(BaseField base, MarkedGroup group,
                      const std::map<std::string, long>& letter_to_power) {
    GField gf{std::move(base), std::move(group), {}};
    const auto& ab = gf.group.alphabet();
    gf.letter_act.assign(ab.size(), gf.base.aut(1));
    for (const auto& [name, k] : letter_to_power) {
        int id = ab.id_of(name);
        if (id < 0)
            throw ValidationError("action assigns the unknown letter '" + name + "'");
        if (gf.base.is_rational() && k != 1)
            throw ValidationError("the rational base field admits only the identity action");
        gf.letter_act[static_cast<size_t>(id)] = gf.base.aut(k);
    }

    const auto dc = groups::diagonal_classes(gf.group);
    for (const auto& cls : dc.classes) {
        if (cls.size() < 2)
            continue;
        const auto [i0, j0] = cls.front();
        const FieldAut first = gf.act(word_concat(gf.group.rho[i0], gf.group.rho[j0]));
        for (size_t t = 1; t < cls.size(); ++t) {
            const auto [i, j] = cls[t];
            if (gf.act(word_concat(gf.group.rho[i], gf.group.rho[j])) != first)
                throw ValidationError(
                    "action violates the marking relation rho_" + std::to_string(i0 + 1) +
                    " rho_" + std::to_string(j0 + 1) + " = rho_" + std::to_string(i + 1) +
                    " rho_" + std::to_string(j + 1));
        }
    }
    return std::make_shared<GField>(std::move(gf));
}

namespace {

RingPtr ring_of_blocks(const BaseField& field, const std::vector<Block>& blocks) {
    std::vector<std::string> vars;
    for (const auto& b : blocks) {
        if (b.vars.empty())
            throw ValidationError("blocks must have at least one coordinate");
        vars.insert(vars.end(), b.vars.begin(), b.vars.end());
    }
    return PolyRing::make(field, std::move(vars));
}

void check_labels(const GField& gf, const std::vector<Block>& blocks) {
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (gf.group.oracle->equal(blocks[i].label, blocks[j].label))
                throw ValidationError("duplicate block label '" +
                                      gf.group.alphabet().render(blocks[i].label) + "'");
}

Poly rename_into(const Poly& p, const RingPtr& target, const std::vector<size_t>& var_map) {
    std::vector<Poly> images;
    images.reserve(var_map.size());
    for (size_t i : var_map)
        images.push_back(Poly::variable(target, i));
    return apply_hom(p, target, images, target->field().aut(1));
}

} // namespace

BlockVariety::BlockVariety(GFieldPtr action, std::vector<Block> blocks, std::vector<Poly> gens)
    : action_(std::move(action)), blocks_(std::move(blocks)) {
    if (!action_)
        throw ValidationError("block variety needs a group action context");
    if (blocks_.empty())
        throw ValidationError("block variety needs at least one block");
    check_labels(*action_, blocks_);
    ring_ = ring_of_blocks(action_->base, blocks_);
    for (const auto& g : gens)
        if (!g.is_zero() && !g.ring()->same_as(*ring_))
            throw ValidationError("generator lives in a different ring than the blocks");
    ideal_ = Ideal(ring_, std::move(gens));
}

BlockVariety::BlockVariety(GFieldPtr action, std::vector<Block> blocks, Ideal ideal)
    : action_(std::move(action)), blocks_(std::move(blocks)) {
    if (!action_)
        throw ValidationError("block variety needs a group action context");
    if (blocks_.empty())
        throw ValidationError("block variety needs at least one block");
    check_labels(*action_, blocks_);
    RingPtr expect = ring_of_blocks(action_->base, blocks_);
    if (!ideal.ring())
        ideal = Ideal(expect, {});
    else if (!ideal.ring()->same_as(*expect))
        throw ValidationError("ideal ring does not match the block variables");
    ring_ = ideal.ring();
    ideal_ = std::move(ideal);
}

BlockVariety BlockVariety::parse(GFieldPtr action, std::vector<Block> blocks,
                                 const std::vector<std::string>& gens) {
    if (!action)
        throw ValidationError("block variety needs a group action context");
    RingPtr ring = ring_of_blocks(action->base, blocks);
    std::vector<Poly> ps;
    ps.reserve(gens.size());
    for (const auto& s : gens)
        ps.push_back(algebra::parse_poly(ring, s));
    return BlockVariety(std::move(action), std::move(blocks), std::move(ps));
}

size_t BlockVariety::var_offset(size_t block) const {
    size_t off = 0;
    for (size_t i = 0; i < block; ++i)
        off += blocks_[i].width();
    return off;
}

int BlockVariety::block_of(const Word& w) const {
    for (size_t i = 0; i < blocks_.size(); ++i)
        if (action_->group.oracle->equal(blocks_[i].label, w))
            return static_cast<int>(i);
    return -1;
}

std::string BlockVariety::label_string(size_t block) const {
    return action_->group.alphabet().render(blocks_.at(block).label);
}

BlockVariety twist(const BlockVariety& v, const Word& w) {
    const FieldAut a = v.action()->act(w);
    std::vector<Block> blocks = v.blocks();
    for (auto& b : blocks)
        b.label = word_concat(w, b.label);
    return BlockVariety(v.action(), std::move(blocks), apply_field_aut(v.ideal(), a));
}

BlockVariety product(const std::vector<BlockVariety>& vs) {
    if (vs.empty())
        throw ValidationError("product needs at least one variety");
    std::vector<Block> blocks;
    for (const auto& v : vs) {
        if (v.action() != vs.front().action())
            throw ValidationError("product inputs must share one action");
        blocks.insert(blocks.end(), v.blocks().begin(), v.blocks().end());
    }
    const auto& gf = *vs.front().action();
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (gf.group.oracle->equal(blocks[i].label, blocks[j].label))
                throw ValidationError("label collision in product: '" +
                                      gf.group.alphabet().render(blocks[i].label) + "'");
    RingPtr ring = ring_of_blocks(gf.base, blocks);
    std::vector<Poly> gens;
    size_t off = 0;
    for (const auto& v : vs) {
        std::vector<size_t> var_map(v.ring()->nvars());
        for (size_t i = 0; i < var_map.size(); ++i)
            var_map[i] = off + i;
        for (const auto& g : v.ideal().gens())
            gens.push_back(rename_into(g, ring, var_map));
        off += v.ring()->nvars();
    }
    return BlockVariety(vs.front().action(), std::move(blocks), Ideal(ring, std::move(gens)));
}

BlockVariety project_closure(const BlockVariety& w, const std::vector<Word>& keep,
                             const Limits& limits) {
    std::vector<bool> keep_block(w.blocks().size(), false);
    for (const auto& lab : keep) {
        int b = w.block_of(lab);
        if (b < 0)
            throw ValidationError("unknown block label '" +
                                  w.action()->group.alphabet().render(lab) + "'");
        keep_block[static_cast<size_t>(b)] = true;
    }
    std::vector<bool> keep_var(w.ring()->nvars(), false);
    std::vector<Block> blocks;
    for (size_t b = 0; b < w.blocks().size(); ++b) {
        if (!keep_block[b])
            continue;
        blocks.push_back(w.blocks()[b]);
        const size_t off = w.var_offset(b);
        for (size_t i = 0; i < w.blocks()[b].width(); ++i)
            keep_var[off + i] = true;
    }
    return BlockVariety(w.action(), std::move(blocks),
                        algebra::eliminate(w.ideal(), keep_var, limits));
}

bool is_dominant(const BlockVariety& w, const BlockVariety& v, const Word& block_label,
                 const Limits& limits) {
    const int bw = w.block_of(block_label);
    if (bw < 0)
        throw ValidationError("unknown block label '" +
                              w.action()->group.alphabet().render(block_label) + "'");
    if (v.blocks().size() != 1 || v.block_of(block_label) != 0)
        throw ValidationError("dominance target must consist of the named block");
    const auto& wb = w.blocks()[static_cast<size_t>(bw)];
    if (wb.width() != v.blocks()[0].width())
        throw ValidationError("block width mismatch in dominance test");

    std::vector<bool> keep_var(w.ring()->nvars(), false);
    const size_t off = w.var_offset(static_cast<size_t>(bw));
    for (size_t i = 0; i < wb.width(); ++i)
        keep_var[off + i] = true;
    Ideal contraction = algebra::eliminate(w.ideal(), keep_var, limits);

    std::vector<size_t> var_map(v.ring()->nvars());
    for (size_t i = 0; i < var_map.size(); ++i)
        var_map[i] = i;
    std::vector<Poly> mapped;
    for (const auto& g : v.ideal().gens())
        mapped.push_back(rename_into(g, contraction.ring(), var_map));
    return ideal_equal(contraction, Ideal(contraction.ring(), std::move(mapped)), limits);
}

BlockVariety fiber_product(const BlockVariety& a, const BlockVariety& b, const Word& base_label,
                           const Limits& limits) {
    (void)limits;
    if (a.action() != b.action())
        throw ValidationError("fiber product inputs must share one action");
    const int ia = a.block_of(base_label);
    const int ib = b.block_of(base_label);
    const auto& ab = a.action()->group.alphabet();
    if (ia < 0 || ib < 0)
        throw ValidationError("unknown base block label '" + ab.render(base_label) + "'");
    const Block& base_a = a.blocks()[static_cast<size_t>(ia)];
    const Block& base_b = b.blocks()[static_cast<size_t>(ib)];
    if (base_a.width() != base_b.width())
        throw ValidationError("base block widths differ in fiber product");

    std::vector<Block> blocks = a.blocks();
    for (size_t j = 0; j < b.blocks().size(); ++j) {
        if (static_cast<int>(j) == ib)
            continue;
        if (a.block_of(b.blocks()[j].label) >= 0)
            throw ValidationError("label collision in fiber product: '" +
                                  ab.render(b.blocks()[j].label) + "'");
        blocks.push_back(b.blocks()[j]);
    }
    RingPtr ring = ring_of_blocks(a.action()->base, blocks);

    std::vector<size_t> map_a(a.ring()->nvars());
    for (size_t i = 0; i < map_a.size(); ++i)
        map_a[i] = i;
    std::vector<size_t> map_b(b.ring()->nvars(), 0);
    {
        const size_t a_base_off = a.var_offset(static_cast<size_t>(ia));
        size_t out = a.ring()->nvars();
        for (size_t j = 0, pos = 0; j < b.blocks().size(); ++j)
            for (size_t i = 0; i < b.blocks()[j].width(); ++i, ++pos)
                map_b[pos] = static_cast<int>(j) == ib ? a_base_off + i : out++;
    }
    std::vector<Poly> gens;
    for (const auto& g : a.ideal().gens())
        gens.push_back(rename_into(g, ring, map_a));
    for (const auto& g : b.ideal().gens())
        gens.push_back(rename_into(g, ring, map_b));
    return BlockVariety(a.action(), std::move(blocks), Ideal(ring, std::move(gens)));
}

BlockVariety coordinate_permutation(const BlockVariety& v, const std::vector<size_t>& lambda) {
    const size_t n = v.blocks().size();
    if (lambda.size() != n)
        throw ValidationError("permutation length does not match the block count");
    std::vector<bool> hit(n, false);
    for (size_t i : lambda) {
        if (i >= n || hit[i])
            throw ValidationError("coordinate permutation is not a permutation");
        hit[i] = true;
    }
    std::vector<Block> blocks;
    for (size_t i = 0; i < n; ++i) {
        if (v.blocks()[lambda[i]].width() != v.blocks()[i].width())
            throw ValidationError("width mismatch at permuted position " + std::to_string(i + 1));
        blocks.push_back(v.blocks()[lambda[i]]);
    }
    RingPtr ring = ring_of_blocks(v.action()->base, blocks);
    std::vector<size_t> var_map(v.ring()->nvars());
    for (size_t i = 0; i < n; ++i) {
        const size_t src = v.var_offset(lambda[i]);
        size_t dst = 0;
        for (size_t j = 0; j < i; ++j)
            dst += blocks[j].width();
        for (size_t t = 0; t < blocks[i].width(); ++t)
            var_map[src + t] = dst + t;
    }
    std::vector<Poly> gens;
    for (const auto& g : v.ideal().gens())
        gens.push_back(rename_into(g, ring, var_map));
    return BlockVariety(v.action(), std::move(blocks), Ideal(ring, std::move(gens)));
}

BlockVariety relabel_left(const BlockVariety& v, const Word& w) {
    std::vector<Block> blocks = v.blocks();
    for (auto& b : blocks)
        b.label = word_concat(w, b.label);
    return BlockVariety(v.action(), std::move(blocks), v.ideal());
}

BlockVariety rename_vars(const BlockVariety& v, const std::vector<std::string>& names) {
    if (names.size() != v.ring()->nvars())
        throw ValidationError("rename needs one name per variable");
    std::vector<Block> blocks = v.blocks();
    size_t pos = 0;
    for (auto& b : blocks)
        for (auto& var : b.vars)
            var = names[pos++];
    RingPtr ring = ring_of_blocks(v.action()->base, blocks);
    std::vector<size_t> var_map(v.ring()->nvars());
    for (size_t i = 0; i < var_map.size(); ++i)
        var_map[i] = i;
    std::vector<Poly> gens;
    for (const auto& g : v.ideal().gens())
        gens.push_back(rename_into(g, ring, var_map));
    return BlockVariety(v.action(), std::move(blocks), Ideal(ring, std::move(gens)));
}

bool same_variety(const BlockVariety& a, const BlockVariety& b, const Limits& limits) {
    if (a.action() != b.action())
        throw ValidationError("variety comparison needs a shared action");
    if (a.blocks().size() != b.blocks().size())
        return false;
    std::vector<size_t> var_map(a.ring()->nvars());
    for (size_t i = 0; i < a.blocks().size(); ++i) {
        const int j = b.block_of(a.blocks()[i].label);
        if (j < 0 || a.blocks()[i].width() != b.blocks()[static_cast<size_t>(j)].width())
            return false;
        const size_t src = a.var_offset(i);
        const size_t dst = b.var_offset(static_cast<size_t>(j));
        for (size_t t = 0; t < a.blocks()[i].width(); ++t)
            var_map[src + t] = dst + t;
    }
    std::vector<Poly> mapped;
    for (const auto& g : a.ideal().gens())
        mapped.push_back(rename_into(g, b.ring(), var_map));
    return ideal_equal(Ideal(b.ring(), std::move(mapped)), b.ideal(), limits);
}

bool is_subvariety(const BlockVariety& a, const BlockVariety& b, const Limits& limits) {
    if (a.action() != b.action())
        throw ValidationError("variety comparison needs a shared action");
    std::vector<size_t> var_map(b.ring()->nvars());
    for (size_t j = 0; j < b.blocks().size(); ++j) {
        const int i = a.block_of(b.blocks()[j].label);
        if (i < 0)
            throw ValidationError("containment target has a block '" +
                                  b.label_string(j) + "' with no counterpart");
        if (b.blocks()[j].width() != a.blocks()[static_cast<size_t>(i)].width())
            throw ValidationError("containment target block '" + b.label_string(j) +
                                  "' has mismatched width");
        const size_t src = b.var_offset(j);
        const size_t dst = a.var_offset(static_cast<size_t>(i));
        for (size_t t = 0; t < b.blocks()[j].width(); ++t)
            var_map[src + t] = dst + t;
    }
    for (const auto& g : b.ideal().gens())
        if (!a.ideal().contains(rename_into(g, a.ring(), var_map), limits))
            return false;
    return true;
}

} // namespace gtcf::variety
