#pragma once

#include "gtcf/gpairs.hpp"

#include <array>
#include <string>
#include <vector>

namespace gtcf::axioms {

using gpairs::GPairOptions;
using gpairs::GPairReport;
using groups::MarkedGroup;
using variety::BlockVariety;

// One coordinate identification of ^(rho.rho)V forced by a relation of P.
// Positions are 1-based marking indices with (i, j) lexicographically before
// (k, l); trivial quadruples and orientation duplicates are never emitted, so
// each nontrivial relation of P shows up exactly once.
struct DiagonalCondition {
    std::array<size_t, 4> relation{}; // (i, j, k, l)
    std::string product;              // shared normal form of rho_i rho_j
    std::string text;                 // "x_(i,j) = x_(k,l)"
};

// The geometric axiom scheme of a marked group: the marking summary, the
// diagonal data of the product matrix, and the pair conditions of its kind.
struct AxiomScheme {
    std::string group;   // display name of the group
    std::string kind;    // marking kind tag
    std::string pair;    // name used for "<pair>-pair" in the sentence

    std::vector<std::string> rho;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<std::pair<size_t, size_t>>> classes; // 1-based
    std::vector<std::string> reps;
    std::vector<DiagonalCondition> diagonal_conditions;

    std::vector<std::string> notation;        // standing abbreviations
    std::vector<std::string> pair_conditions; // defining clauses, in order
    std::string template_line;                // existential scheme shape
    std::string sentence;                     // full axioms sentence
    std::string citation;                     // the supporting theorem
};

AxiomScheme emit_axiom_scheme(const MarkedGroup& m);

// Deterministic plain-text rendering; equal schemes give identical bytes.
std::string render_text(const AxiomScheme& s);

// One concrete instance of the scheme at a verified pair.
struct AxiomInstance {
    std::string group;
    std::string kind;   // pair definition that was applied
    GPairReport report; // the passing check
    std::string sentence;
    std::string inlined; // generators of I(V), I(W) substituted at rho(x)
    std::string text;    // full document
};

// Throws gpairs::PairCheckFailed carrying the report when (V, W) fails the
// pair check of the marking.
AxiomInstance emit_axiom_instance(const MarkedGroup& m, const BlockVariety& v,
                                  const BlockVariety& w, const GPairOptions& opts = {});

} // namespace gtcf::axioms
