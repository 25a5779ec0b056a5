#pragma once

#include "gtcf/finite_group.hpp"
#include "gtcf/words.hpp"

#include <optional>

namespace gtcf::groups {

enum class GroupKind { Free, Finite, TreeAmalgam, Hnn, GraphOfGroups, Product };

std::string kind_name(GroupKind k);

// Positions of one vertex group inside the amalgamated tuple rho_T.
struct VertexMarking {
    std::string name;
    FiniteGroup group;
    // rho_pos[k] = index into rho of the k-th element's representative.
    std::vector<size_t> rho_pos;
};

// One non-tree edge: stable letter plus its t_e * rho_T block.
struct LoopMarking {
    std::string letter;              // stable letter name
    size_t block_start;              // index into rho of the block's first entry
    size_t iota_vertex, tau_vertex;  // endpoints (indices into vertices)
    std::vector<Word> edge_elems;    // images of the edge group in the iota vertex
    std::vector<Word> alpha_images;  // corresponding images in the tau vertex
};

struct GraphMarking {
    size_t rho_t_len = 0;
    std::vector<VertexMarking> vertices;
    std::vector<LoopMarking> loops;
};

// F_n x G0, or the infinite dihedral group Z x| C2 when dinfty is set.
struct ProductMarking {
    bool dinfty = false;
    unsigned rank = 0;
    std::optional<FiniteGroup> g0;
};

// A group together with a finite marking tuple rho and a word oracle. The
// identity sits at identity_index (0 everywhere except the dihedral marking,
// which stores rho = (s^-1, 1, s, s^-1 t, t, s t)).
struct MarkedGroup {
    GroupKind kind = GroupKind::Free;
    OraclePtr oracle;
    std::vector<Word> rho;
    size_t identity_index = 0;

    unsigned free_rank = 0;                 // kind == Free
    std::optional<FiniteGroup> finite;      // kind == Finite
    std::optional<GraphMarking> graph;      // tree-amalgam / hnn / graph kinds
    std::optional<ProductMarking> product;  // kind == Product

    const Alphabet& alphabet() const { return oracle->alphabet(); }
    size_t arity() const { return rho.size(); }
    std::string rho_label(size_t i) const { return alphabet().render(rho[i]); }
    // Index of the rho entry equal to w, or -1.
    int rho_index_of(const Word& w) const;
};

MarkedGroup marked_free_group(unsigned rank);
MarkedGroup marked_finite_group(FiniteGroup g);
MarkedGroup marked_product_group(unsigned rank, FiniteGroup g0);
MarkedGroup marked_dihedral_group();

// Invariant checks shared by all constructions: rho[identity] is the
// identity, entries pairwise distinct under the oracle.
void validate_marking(const MarkedGroup& m);

// Partial left-multiplication map: result[j] = i when w * rho[j] = rho[i]
// under the oracle, or -1 when the product leaves the marking.
std::vector<int> left_mul_permutation(const MarkedGroup& m, const Word& w);

// m x m matrix of normal forms of rho_i * rho_j.
std::vector<std::vector<Word>> rho_product_matrix(const MarkedGroup& m);

// Partition of marking positions (i, j) by the group element rho_i * rho_j.
// Classes are ordered by first row-major occurrence; reps are normal forms.
// The relation set P consists of all quadruples (i, j, k, l) with (i, j) and
// (k, l) in one class.
struct DiagonalClasses {
    size_t m = 0;
    std::vector<std::vector<std::pair<size_t, size_t>>> classes;
    std::vector<Word> reps;
    std::vector<std::vector<size_t>> class_of;

    size_t nontrivial_count() const;
};

DiagonalClasses diagonal_classes(const MarkedGroup& m);

} // namespace gtcf::groups
