#pragma once

#include "gtcf/finite_group.hpp"
#include "gtcf/marked_group.hpp"
#include "gtcf/words.hpp"

#include <string>
#include <vector>

namespace gtcf::bass_serre {

using groups::FiniteGroup;
using groups::MarkedGroup;
using groups::Word;

// One edge of a graph of finite groups. The edge group injects into both
// endpoint groups; inj_from/inj_to list the image element index for every
// edge group element. Non-tree edges contribute a stable letter named
// `letter` (auto-assigned when empty).
struct GogEdge {
    size_t from = 0, to = 0;
    FiniteGroup edge_group;
    std::vector<uint32_t> inj_from;
    std::vector<uint32_t> inj_to;
    bool in_tree = true;
    std::string letter;
};

struct GraphOfGroups {
    std::vector<std::string> vertex_names;
    std::vector<FiniteGroup> vertex_groups;
    std::vector<GogEdge> edges;
};

// Validates the data: injections are monomorphisms, tree edges form a
// spanning tree, element names are globally unambiguous. Returns the graph
// with stable letters assigned.
GraphOfGroups build_graph_of_groups(std::vector<std::string> vertex_names,
                                    std::vector<FiniteGroup> vertex_groups,
                                    std::vector<GogEdge> edges);

// Fundamental group of the graph of groups, marked by rho_T (amalgamated
// union of the vertex tuples, first occurrence kept) followed by one block
// t_e * rho_T per non-tree edge. The word oracle computes canonical normal
// forms: amalgam normal forms along the tree, Britton reduction plus coset
// representative folding per stable letter.
MarkedGroup fundamental_marked_group(const GraphOfGroups& g);

struct NormalForm {
    Word word;
    std::string certificate; // finite-table | amalgam-normal-form | britton-reduction
};

NormalForm normal_form(const MarkedGroup& m, const Word& w);
bool words_equal(const MarkedGroup& m, const Word& a, const Word& b);

} // namespace gtcf::bass_serre
