#pragma once

#include "gtcf/field.hpp"
#include "gtcf/groebner.hpp"
#include "gtcf/marked_group.hpp"
#include "gtcf/poly.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gtcf::variety {

using algebra::BaseField;
using algebra::FieldAut;
using algebra::Ideal;
using algebra::Limits;
using algebra::Poly;
using algebra::RingPtr;
using groups::MarkedGroup;
using groups::Word;

// A field together with an action of the marked group by automorphisms. The
// action is given on the alphabet letters and extended to words by
// composition; words act on the left, so act(u * v) = act(u) after act(v).
struct GField {
    BaseField base;
    MarkedGroup group;
    std::vector<FieldAut> letter_act; // indexed by alphabet letter id

    FieldAut act(const Word& w) const;
};

using GFieldPtr = std::shared_ptr<const GField>;

// Builds the action from letter name -> zeta exponent (letters not listed act
// as the identity) and validates it against the relation set P of the
// marking: within every diagonal class all products rho_i * rho_j must act by
// one automorphism, which is decidable on the cyclotomic generator.
GFieldPtr make_gfield(BaseField base, MarkedGroup group,
                      const std::map<std::string, long>& letter_to_power);

struct Block {
    Word label;
    std::vector<std::string> vars;

    size_t width() const { return vars.size(); }
};

// Affine variety presented as an ideal over block-structured coordinates.
// Blocks carry marking words as labels; label equality is group equality.
// Ideals are not certified prime: the shipped constructions stay inside
// families whose irreducibility is known, and reports say so.
class BlockVariety {
public:
    BlockVariety(GFieldPtr action, std::vector<Block> blocks, std::vector<Poly> gens);
    BlockVariety(GFieldPtr action, std::vector<Block> blocks, Ideal ideal);
    static BlockVariety parse(GFieldPtr action, std::vector<Block> blocks,
                              const std::vector<std::string>& gens);

    const GFieldPtr& action() const { return action_; }
    const BaseField& field() const { return ring_->field(); }
    const RingPtr& ring() const { return ring_; }
    const Ideal& ideal() const { return ideal_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    size_t var_offset(size_t block) const;
    // Index of the block whose label equals w under the group, or -1.
    int block_of(const Word& w) const;
    std::string label_string(size_t block) const;

private:
    GFieldPtr action_;
    std::vector<Block> blocks_;
    RingPtr ring_;
    Ideal ideal_;
};

// ^wV: coefficients through act(w), labels left-multiplied by w.
BlockVariety twist(const BlockVariety& v, const Word& w);

// ^rho-style product: concatenated blocks, generators in disjoint variables.
BlockVariety product(const std::vector<BlockVariety>& vs);

// Zariski closure of the projection onto the named blocks, via elimination.
BlockVariety project_closure(const BlockVariety& w, const std::vector<Word>& keep,
                             const Limits& limits = {});

// Scheme-theoretic dominance of the projection W -> V at the named block:
// the contraction of I(W) equals I(V).
bool is_dominant(const BlockVariety& w, const BlockVariety& v, const Word& block_label,
                 const Limits& limits = {});

// W1 x_base W2 with the base blocks identified; generators of both sides.
BlockVariety fiber_product(const BlockVariety& a, const BlockVariety& b, const Word& base_label,
                           const Limits& limits = {});

// Pure reorder: new block i is old block lambda[i]; labels travel with their
// content. Position widths must be preserved.
BlockVariety coordinate_permutation(const BlockVariety& v, const std::vector<size_t>& lambda);

// Relabels blocks by w * label without touching coordinates or coefficients:
// the coordinate-permutation image of V inside the ambient twisted by w.
BlockVariety relabel_left(const BlockVariety& v, const Word& w);

// Renames all variables positionally (blocks keep their labels and widths).
BlockVariety rename_vars(const BlockVariety& v, const std::vector<std::string>& names);

// Equality as subvarieties of the shared ambient: blocks matched by label,
// variables identified positionally inside matched blocks, ideals equal.
bool same_variety(const BlockVariety& a, const BlockVariety& b, const Limits& limits = {});

// Containment of a in the cylinder over b: every block of b is matched to a
// block of a by label, and every generator of I(b) becomes a member of I(a)
// along that matching. Blocks of b missing from a are an error.
bool is_subvariety(const BlockVariety& a, const BlockVariety& b, const Limits& limits = {});

} // namespace gtcf::variety
