#pragma once

#include "gtcf/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gtcf::algebra {

// Monomial order realized as lex over a variable priority sequence. Plain lex
// uses ambient order; a two-block elimination order lists the eliminated
// variables first. Restricted to the kept variables the elimination order
// coincides with ambient lex, which `eliminate` relies on.
class MonOrder {
public:
    static MonOrder lex(size_t nvars);
    // Eliminated variables get front priority, ambient order within each block.
    static MonOrder elimination(const std::vector<bool>& eliminate);

    int cmp(const Mono& a, const Mono& b) const;
    bool greater(const Mono& a, const Mono& b) const { return cmp(a, b) > 0; }
    size_t nvars() const { return priority_.size(); }
    const std::string& key() const { return key_; }

private:
    std::vector<size_t> priority_;
    std::string key_;
};

struct Limits {
    unsigned max_degree = 0; // 0 = unbounded; degree cap on S-polynomials
    size_t max_basis = 4096;
};

// Leading monomial/coefficient of a nonzero polynomial under the order.
std::pair<Mono, FieldElem> leading_term(const Poly& p, const MonOrder& ord);

// Full normal form of p modulo the (not necessarily Groebner) list basis.
Poly reduce(const Poly& p, const std::vector<Poly>& basis, const MonOrder& ord);

// Buchberger with the sugar selection strategy. Returns the unique monic
// reduced Groebner basis, sorted ascending by leading monomial. Throws
// ResourceLimit when limits are exceeded.
std::vector<Poly> groebner(const RingPtr& ring, std::vector<Poly> gens, const MonOrder& ord,
                           const Limits& limits = {});

// Finitely generated ideal with per-order cached reduced bases.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, std::vector<Poly> gens);
    // Wraps generators already known to be the reduced basis for `ord`.
    static Ideal with_known_basis(RingPtr ring, std::vector<Poly> basis, const MonOrder& ord);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }
    const std::vector<Poly>& basis(const MonOrder& ord, const Limits& limits = {}) const;
    // Reduced lex basis (the canonical form used for comparisons).
    const std::vector<Poly>& lex_basis(const Limits& limits = {}) const;

    bool contains(const Poly& p, const Limits& limits = {}) const;
    bool is_trivial(const Limits& limits = {}) const; // ideal = (1)
    bool is_zero_ideal() const;

private:
    RingPtr ring_;
    std::vector<Poly> gens_;
    mutable std::map<std::string, std::vector<Poly>> cache_;
};

bool ideal_equal(const Ideal& a, const Ideal& b, const Limits& limits = {});

// Contraction to the subring of variables with keep[i] = true, via a
// two-block elimination order. The result lives in the subring.
Ideal eliminate(const Ideal& ideal, const std::vector<bool>& keep, const Limits& limits = {});

// Coefficient-wise automorphism applied to all generators.
Ideal apply_field_aut(const Ideal& ideal, const FieldAut& aut);

} // namespace gtcf::algebra
