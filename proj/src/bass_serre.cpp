#include "gtcf/bass_serre.hpp"

#include "gtcf/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <queue>

namespace gtcf::bass_serre {

using groups::Alphabet;
using groups::GraphMarking;
using groups::GroupKind;
using groups::LoopMarking;
using groups::VertexMarking;
using groups::WLetter;
using groups::WordOracle;
using groups::word_concat;
using groups::word_shortlex_less;

namespace {

struct LetterInfo {
    int vertex = -1;   // >= 0 for vertex group letters
    uint32_t elem = 0; // element index within the vertex group
    int loop = -1;     // >= 0 for stable letters
};

// Attachment of the BFS-level-`k` tree vertex to the group built from the
// previous levels. For each edge group element: its image in the new vertex
// group, its image in the previous group as a word, and canonical forms used
// for membership tests and for rendering trailing subgroup parts.
struct TreeLevel {
    size_t vertex;
    FiniteGroup edge;
    std::vector<uint32_t> emb_b, emb_b_inv;
    std::vector<Word> emb_prev, emb_prev_inv, emb_prev_nf;
    std::map<uint32_t, uint32_t> b_member;
    std::map<Word, uint32_t> prev_member;
};

// One stable letter. Both subgroup images live in the tree group; the
// defining relation is emb_iota(a) * t = t * emb_tau(a).
struct HnnLevel {
    uint32_t letter;
    FiniteGroup edge;
    std::vector<Word> emb_iota, emb_iota_inv, emb_iota_nf;
    std::vector<Word> emb_tau, emb_tau_inv, emb_tau_nf;
    std::map<Word, uint32_t> iota_member, tau_member;
};

class FundamentalOracle final : public WordOracle {
  public:
    explicit FundamentalOracle(const GraphOfGroups& g);

    const Alphabet& alphabet() const override { return alphabet_; }
    Word normal_form(const Word& w) const override;
    std::string certificate() const override { return certificate_; }

    uint32_t vertex_letter(size_t vertex, uint32_t elem) const;
    uint32_t stable_letter(size_t loop) const { return hnn_[loop].letter; }
    bool is_stable(uint32_t id) const { return info_.at(id).loop >= 0; }

  private:
    Word word_of_elem(size_t vertex, uint32_t elem) const;
    Word amalgam_nf(const Word& w, size_t level) const;
    Word britton_nf(const Word& w, size_t level) const;

    Alphabet alphabet_;
    std::vector<LetterInfo> info_;
    std::vector<std::vector<uint32_t>> elem_letter_; // [vertex][elem] -> letter id + 1
    std::vector<FiniteGroup> vgroups_;
    std::vector<size_t> tree_pos_; // vertex -> BFS position
    std::vector<TreeLevel> tree_;  // BFS positions 1..
    std::vector<HnnLevel> hnn_;
    size_t root_ = 0;
    std::string certificate_;
};

std::vector<size_t> bfs_tree_order(const GraphOfGroups& g, std::vector<int>& parent_edge) {
    const size_t n = g.vertex_names.size();
    std::vector<std::vector<std::pair<size_t, int>>> adj(n);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (!g.edges[e].in_tree)
            continue;
        adj[g.edges[e].from].push_back({g.edges[e].to, static_cast<int>(e)});
        adj[g.edges[e].to].push_back({g.edges[e].from, static_cast<int>(e)});
    }
    std::vector<size_t> order;
    parent_edge.assign(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<size_t> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        size_t v = q.front();
        q.pop();
        order.push_back(v);
        for (auto [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                parent_edge[w] = e;
                q.push(w);
            }
    }
    return order;
}

FundamentalOracle::FundamentalOracle(const GraphOfGroups& g) {
    const size_t n = g.vertex_names.size();
    vgroups_ = g.vertex_groups;

    std::vector<std::string> names;
    elem_letter_.resize(n);
    for (size_t v = 0; v < n; ++v) {
        const auto& grp = vgroups_[v];
        elem_letter_[v].assign(grp.size(), 0);
        for (uint32_t k = 1; k < grp.size(); ++k) {
            elem_letter_[v][k] = static_cast<uint32_t>(names.size()) + 1;
            names.push_back(grp.name(k));
            info_.push_back({static_cast<int>(v), k, -1});
        }
    }
    std::vector<size_t> loop_edges;
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (!g.edges[e].in_tree)
            loop_edges.push_back(e);
    const uint32_t first_stable = static_cast<uint32_t>(names.size());
    for (size_t j = 0; j < loop_edges.size(); ++j) {
        names.push_back(g.edges[loop_edges[j]].letter);
        info_.push_back({-1, 0, static_cast<int>(j)});
    }
    alphabet_ = Alphabet(names);

    std::vector<int> parent_edge;
    auto order = bfs_tree_order(g, parent_edge);
    root_ = order[0];
    tree_pos_.assign(n, 0);
    for (size_t k = 0; k < order.size(); ++k)
        tree_pos_[order[k]] = k;

    for (size_t k = 1; k < order.size(); ++k) {
        const size_t v = order[k];
        const auto& ed = g.edges[static_cast<size_t>(parent_edge[v])];
        const bool new_is_to = (ed.to == v);
        const auto& inj_new = new_is_to ? ed.inj_to : ed.inj_from;
        const auto& inj_prev = new_is_to ? ed.inj_from : ed.inj_to;
        const size_t prev_vertex = new_is_to ? ed.from : ed.to;
        TreeLevel lv{v, ed.edge_group, {}, {}, {}, {}, {}, {}, {}};
        for (uint32_t a = 0; a < ed.edge_group.size(); ++a) {
            lv.emb_b.push_back(inj_new[a]);
            lv.emb_b_inv.push_back(vgroups_[v].inv(inj_new[a]));
            lv.emb_prev.push_back(word_of_elem(prev_vertex, inj_prev[a]));
            lv.emb_prev_inv.push_back(
                word_of_elem(prev_vertex, vgroups_[prev_vertex].inv(inj_prev[a])));
            lv.b_member[inj_new[a]] = a;
        }
        tree_.push_back(std::move(lv));
    }
    for (size_t k = 0; k < tree_.size(); ++k) {
        auto& lv = tree_[k];
        for (uint32_t a = 0; a < lv.edge.size(); ++a) {
            lv.emb_prev_nf.push_back(amalgam_nf(lv.emb_prev[a], k));
            lv.prev_member[lv.emb_prev_nf.back()] = a;
        }
    }

    for (size_t j = 0; j < loop_edges.size(); ++j) {
        const auto& ed = g.edges[loop_edges[j]];
        HnnLevel lv{first_stable + static_cast<uint32_t>(j), ed.edge_group, {}, {}, {},
                    {}, {}, {}, {}, {}};
        for (uint32_t a = 0; a < ed.edge_group.size(); ++a) {
            lv.emb_iota.push_back(word_of_elem(ed.from, ed.inj_from[a]));
            lv.emb_iota_inv.push_back(word_of_elem(ed.from, vgroups_[ed.from].inv(ed.inj_from[a])));
            lv.emb_tau.push_back(word_of_elem(ed.to, ed.inj_to[a]));
            lv.emb_tau_inv.push_back(word_of_elem(ed.to, vgroups_[ed.to].inv(ed.inj_to[a])));
            lv.emb_iota_nf.push_back(amalgam_nf(lv.emb_iota.back(), tree_.size()));
            lv.emb_tau_nf.push_back(amalgam_nf(lv.emb_tau.back(), tree_.size()));
            lv.iota_member[lv.emb_iota_nf.back()] = a;
            lv.tau_member[lv.emb_tau_nf.back()] = a;
        }
        hnn_.push_back(std::move(lv));
    }

    if (!hnn_.empty())
        certificate_ = "britton-reduction";
    else if (n > 1)
        certificate_ = "amalgam-normal-form";
    else
        certificate_ = "finite-table";
}

uint32_t FundamentalOracle::vertex_letter(size_t vertex, uint32_t elem) const {
    if (elem == 0)
        throw ValidationError("identity element has no letter");
    return elem_letter_.at(vertex).at(elem) - 1;
}

Word FundamentalOracle::word_of_elem(size_t vertex, uint32_t elem) const {
    if (elem == 0)
        return {};
    return {WLetter{elem_letter_[vertex][elem] - 1, 1}};
}

Word FundamentalOracle::normal_form(const Word& w) const {
    for (const auto& l : w) {
        if (l.id >= info_.size())
            throw ValidationError("letter id " + std::to_string(l.id) + " outside the alphabet");
        if (l.exp != 1 && l.exp != -1)
            throw ValidationError("letter exponent must be +1 or -1");
    }
    return britton_nf(w, hnn_.size());
}

// Canonical form at tree level `level`: alternating nontrivial shortlex-least
// coset representatives modulo the attaching edge subgroup, then a trailing
// subgroup part rendered on the previous-levels side.
Word FundamentalOracle::amalgam_nf(const Word& w, size_t level) const {
    if (level == 0) {
        const auto& grp = vgroups_[root_];
        uint32_t acc = 0;
        for (const auto& l : w) {
            const auto& li = info_[l.id];
            if (li.vertex != static_cast<int>(root_))
                throw ValidationError("internal: letter outside the root vertex group");
            acc = grp.mul(acc, l.exp > 0 ? li.elem : grp.inv(li.elem));
        }
        return word_of_elem(root_, acc);
    }
    const TreeLevel& lv = tree_[level - 1];
    const auto& grp = vgroups_[lv.vertex];

    struct Piece {
        bool is_b;
        uint32_t elem;
        Word w;
    };
    std::vector<Piece> ps;
    for (const auto& l : w) {
        const auto& li = info_[l.id];
        const bool is_b = li.vertex == static_cast<int>(lv.vertex);
        if (!is_b && (li.vertex < 0 || tree_pos_[static_cast<size_t>(li.vertex)] >= level))
            throw ValidationError("internal: letter above the current amalgam level");
        if (ps.empty() || ps.back().is_b != is_b)
            ps.push_back({is_b, 0, {}});
        if (is_b)
            ps.back().elem = grp.mul(ps.back().elem, l.exp > 0 ? li.elem : grp.inv(li.elem));
        else
            ps.back().w.push_back(l);
    }

    auto stabilize = [&]() {
        for (bool dirty = true; dirty;) {
            dirty = false;
            for (auto& p : ps)
                if (!p.is_b)
                    p.w = amalgam_nf(p.w, level - 1);
            std::vector<Piece> out;
            for (auto& p : ps) {
                if (p.is_b ? p.elem == 0 : p.w.empty()) {
                    dirty = true;
                    continue;
                }
                if (!out.empty() && out.back().is_b == p.is_b) {
                    if (p.is_b)
                        out.back().elem = grp.mul(out.back().elem, p.elem);
                    else
                        out.back().w = word_concat(out.back().w, p.w);
                    dirty = true;
                } else {
                    out.push_back(std::move(p));
                }
            }
            ps = std::move(out);
        }
    };
    stabilize();

    // Rewrite pieces lying in the edge subgroup through the other factor and
    // fuse them with their neighbors, so that every representative extracted
    // by the fold below is nontrivial. A lone subgroup element is rendered on
    // the previous-levels side.
    for (bool merged = true; merged;) {
        merged = false;
        for (size_t i = 0; i < ps.size(); ++i) {
            int a = -1;
            if (ps[i].is_b) {
                auto it = lv.b_member.find(ps[i].elem);
                if (it != lv.b_member.end())
                    a = static_cast<int>(it->second);
            } else {
                auto it = lv.prev_member.find(ps[i].w);
                if (it != lv.prev_member.end())
                    a = static_cast<int>(it->second);
            }
            if (a < 0)
                continue;
            if (ps.size() == 1)
                return lv.emb_prev_nf[static_cast<size_t>(a)];
            if (ps[i].is_b)
                ps[i] = {false, 0, lv.emb_prev[static_cast<size_t>(a)]};
            else
                ps[i] = {true, lv.emb_b[static_cast<size_t>(a)], {}};
            stabilize();
            merged = true;
            break;
        }
    }
    if (ps.empty())
        return {};

    Word out;
    uint32_t carry = 0;
    for (size_t i = 0; i < ps.size(); ++i) {
        Piece x = ps[i];
        if (carry != 0) {
            if (x.is_b)
                x.elem = grp.mul(lv.emb_b[carry], x.elem);
            else
                x.w = amalgam_nf(word_concat(lv.emb_prev[carry], x.w), level - 1);
            carry = 0;
        }
        if (i + 1 == ps.size()) {
            const Word tail = x.is_b ? word_of_elem(lv.vertex, x.elem) : x.w;
            out.insert(out.end(), tail.begin(), tail.end());
            break;
        }
        int best_a = -1;
        Word best;
        for (uint32_t a = 0; a < lv.edge.size(); ++a) {
            Word cand;
            if (x.is_b)
                cand = word_of_elem(lv.vertex, grp.mul(x.elem, lv.emb_b_inv[a]));
            else
                cand = amalgam_nf(word_concat(x.w, lv.emb_prev_inv[a]), level - 1);
            if (best_a < 0 || word_shortlex_less(cand, best)) {
                best_a = static_cast<int>(a);
                best = std::move(cand);
            }
        }
        out.insert(out.end(), best.begin(), best.end());
        carry = static_cast<uint32_t>(best_a);
    }
    return out;
}

// Canonical form using the stable letters up to `level`: Britton reduction
// removes pinches, then a left-to-right fold replaces every segment before a
// stable letter by the shortlex-least representative of its coset modulo the
// relevant subgroup image, pushing the subgroup part through the letter.
Word FundamentalOracle::britton_nf(const Word& w, size_t level) const {
    if (level == 0) {
        for (const auto& l : w)
            if (info_[l.id].loop >= 0)
                throw ValidationError("internal: stable letter below its level");
        return amalgam_nf(w, tree_.size());
    }
    const HnnLevel& lv = hnn_[level - 1];
    std::vector<Word> segs(1);
    std::vector<int> eps;
    for (const auto& l : w) {
        if (l.id == lv.letter) {
            eps.push_back(l.exp);
            segs.emplace_back();
        } else {
            segs.back().push_back(l);
        }
    }
    if (eps.empty())
        return britton_nf(w, level - 1);
    for (auto& s : segs)
        s = britton_nf(s, level - 1);

    for (bool reduced = true; reduced && !eps.empty();) {
        reduced = false;
        for (size_t i = 1; i + 1 < segs.size(); ++i) {
            const Word* repl = nullptr;
            if (eps[i - 1] < 0 && eps[i] > 0) {
                auto it = lv.iota_member.find(segs[i]);
                if (it != lv.iota_member.end())
                    repl = &lv.emb_tau[it->second];
            } else if (eps[i - 1] > 0 && eps[i] < 0) {
                auto it = lv.tau_member.find(segs[i]);
                if (it != lv.tau_member.end())
                    repl = &lv.emb_iota[it->second];
            }
            if (!repl)
                continue;
            segs[i - 1] =
                britton_nf(word_concat(segs[i - 1], word_concat(*repl, segs[i + 1])), level - 1);
            segs.erase(segs.begin() + static_cast<long>(i),
                       segs.begin() + static_cast<long>(i) + 2);
            eps.erase(eps.begin() + static_cast<long>(i) - 1,
                      eps.begin() + static_cast<long>(i) + 1);
            reduced = true;
            break;
        }
    }
    if (eps.empty())
        return segs[0];

    Word out;
    Word carry;
    for (size_t i = 0; i < eps.size(); ++i) {
        const Word x = carry.empty() ? segs[i] : britton_nf(word_concat(carry, segs[i]), level - 1);
        const auto& emb_inv = eps[i] > 0 ? lv.emb_iota_inv : lv.emb_tau_inv;
        const auto& emb_next = eps[i] > 0 ? lv.emb_tau : lv.emb_iota;
        int best_a = -1;
        Word best;
        for (uint32_t a = 0; a < lv.edge.size(); ++a) {
            Word cand = britton_nf(word_concat(x, emb_inv[a]), level - 1);
            if (best_a < 0 || word_shortlex_less(cand, best)) {
                best_a = static_cast<int>(a);
                best = std::move(cand);
            }
        }
        out.insert(out.end(), best.begin(), best.end());
        out.push_back(WLetter{lv.letter, static_cast<int8_t>(eps[i] > 0 ? 1 : -1)});
        carry = emb_next[static_cast<size_t>(best_a)];
    }
    const Word tail =
        carry.empty() ? segs.back() : britton_nf(word_concat(carry, segs.back()), level - 1);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

} // namespace

GraphOfGroups build_graph_of_groups(std::vector<std::string> vertex_names,
                                    std::vector<FiniteGroup> vertex_groups,
                                    std::vector<GogEdge> edges) {
    if (vertex_names.empty())
        throw ValidationError("graph of groups needs at least one vertex");
    if (vertex_names.size() != vertex_groups.size())
        throw ValidationError("vertex name and vertex group counts differ");
    std::map<std::string, size_t> vname;
    for (size_t v = 0; v < vertex_names.size(); ++v) {
        if (vertex_names[v].empty())
            throw ValidationError("vertex names must be nonempty");
        if (!vname.emplace(vertex_names[v], v).second)
            throw ValidationError("duplicate vertex name '" + vertex_names[v] + "'");
    }
    std::map<std::string, size_t> owner;
    for (size_t v = 0; v < vertex_groups.size(); ++v)
        for (uint32_t k = 1; k < vertex_groups[v].size(); ++k) {
            const auto& nm = vertex_groups[v].name(k);
            auto [it, fresh] = owner.emplace(nm, v);
            if (!fresh)
                throw ValidationError("element name '" + nm + "' appears in both vertex '" +
                                      vertex_names[it->second] + "' and vertex '" +
                                      vertex_names[v] + "'");
        }

    size_t tree_count = 0, loop_count = 0;
    for (size_t e = 0; e < edges.size(); ++e) {
        auto& ed = edges[e];
        if (ed.from >= vertex_names.size() || ed.to >= vertex_names.size())
            throw ValidationError("edge " + std::to_string(e) + " endpoint out of range");
        std::string why;
        if (!ed.edge_group.is_injective_hom(vertex_groups[ed.from], ed.inj_from, &why))
            throw ValidationError("edge " + std::to_string(e) + " injection into '" +
                                  vertex_names[ed.from] + "' is invalid: " + why);
        if (!ed.edge_group.is_injective_hom(vertex_groups[ed.to], ed.inj_to, &why))
            throw ValidationError("edge " + std::to_string(e) + " injection into '" +
                                  vertex_names[ed.to] + "' is invalid: " + why);
        if (ed.in_tree) {
            if (ed.from == ed.to)
                throw ValidationError("edge " + std::to_string(e) + " is a tree edge loop");
            ++tree_count;
        } else {
            ++loop_count;
        }
    }
    if (tree_count != vertex_names.size() - 1)
        throw ValidationError("tree edges must form a spanning tree: expected " +
                              std::to_string(vertex_names.size() - 1) + " edges, got " +
                              std::to_string(tree_count));
    {
        GraphOfGroups probe{vertex_names, vertex_groups, edges};
        std::vector<int> parent_edge;
        if (bfs_tree_order(probe, parent_edge).size() != vertex_names.size())
            throw ValidationError("tree edges do not connect all vertices");
    }

    size_t loop_idx = 0;
    std::map<std::string, size_t> stable_names;
    for (auto& ed : edges) {
        if (ed.in_tree)
            continue;
        if (ed.letter.empty())
            ed.letter = loop_count == 1 ? "t" : "t" + std::to_string(loop_idx + 1);
        if (ed.letter == "1")
            throw ValidationError("stable letter may not be named '1'");
        if (owner.count(ed.letter))
            throw ValidationError("stable letter '" + ed.letter +
                                  "' collides with a vertex group element");
        if (!stable_names.emplace(ed.letter, loop_idx).second)
            throw ValidationError("duplicate stable letter '" + ed.letter + "'");
        ++loop_idx;
    }
    return {std::move(vertex_names), std::move(vertex_groups), std::move(edges)};
}

MarkedGroup fundamental_marked_group(const GraphOfGroups& g) {
    auto oracle = std::make_shared<FundamentalOracle>(g);
    const size_t n = g.vertex_names.size();
    size_t loops = 0;
    for (const auto& e : g.edges)
        if (!e.in_tree)
            ++loops;

    MarkedGroup m;
    m.oracle = oracle;
    if (loops == 0)
        m.kind = n == 1 ? GroupKind::Finite : GroupKind::TreeAmalgam;
    else
        m.kind = n == 1 ? GroupKind::Hnn : GroupKind::GraphOfGroups;
    if (m.kind == GroupKind::Finite)
        m.finite = g.vertex_groups[0];

    auto elem_word = [&](size_t v, uint32_t k) {
        return k == 0 ? Word{} : Word{WLetter{oracle->vertex_letter(v, k), 1}};
    };

    GraphMarking gm;
    std::map<Word, size_t> seen;
    std::vector<Word> rho_t;
    for (size_t v = 0; v < n; ++v) {
        VertexMarking vm{g.vertex_names[v], g.vertex_groups[v], {}};
        for (uint32_t k = 0; k < g.vertex_groups[v].size(); ++k) {
            const Word wk = elem_word(v, k);
            auto [it, fresh] = seen.emplace(oracle->normal_form(wk), rho_t.size());
            if (fresh)
                rho_t.push_back(wk);
            vm.rho_pos.push_back(it->second);
        }
        gm.vertices.push_back(std::move(vm));
    }
    gm.rho_t_len = rho_t.size();

    m.rho = rho_t;
    size_t loop_idx = 0;
    for (const auto& e : g.edges) {
        if (e.in_tree)
            continue;
        LoopMarking lm{e.letter, m.rho.size(), e.from, e.to, {}, {}};
        for (uint32_t a = 0; a < e.edge_group.size(); ++a) {
            lm.edge_elems.push_back(elem_word(e.from, e.inj_from[a]));
            lm.alpha_images.push_back(elem_word(e.to, e.inj_to[a]));
        }
        const Word t{WLetter{oracle->stable_letter(loop_idx), 1}};
        for (const auto& x : rho_t)
            m.rho.push_back(word_concat(t, x));
        gm.loops.push_back(std::move(lm));
        ++loop_idx;
    }
    m.graph = std::move(gm);
    groups::validate_marking(m);
    return m;
}

NormalForm normal_form(const MarkedGroup& m, const Word& w) {
    if (!m.oracle)
        throw ValidationError("marked group has no word oracle");
    Word nf = m.oracle->normal_form(w);
    const auto* fo = dynamic_cast<const FundamentalOracle*>(m.oracle.get());
    if (!fo)
        return {std::move(nf), m.oracle->certificate()};
    bool stable = false;
    for (const auto& l : w)
        stable = stable || fo->is_stable(l.id);
    std::string cert = stable ? "britton-reduction"
                       : m.graph && m.graph->vertices.size() > 1 ? "amalgam-normal-form"
                                                                 : "finite-table";
    return {std::move(nf), std::move(cert)};
}

bool words_equal(const MarkedGroup& m, const Word& a, const Word& b) {
    if (!m.oracle)
        throw ValidationError("marked group has no word oracle");
    return m.oracle->equal(a, b);
}

} // namespace gtcf::bass_serre
