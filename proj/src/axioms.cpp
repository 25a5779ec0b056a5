#include "gtcf/axioms.hpp"

#include "gtcf/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gtcf::axioms {

using algebra::FieldAut;
using algebra::Poly;
using algebra::PolyRing;
using algebra::RingPtr;
using groups::Alphabet;
using groups::FiniteGroup;
using groups::GroupKind;
using groups::Word;
using groups::word_concat;

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string apply_render(const std::string& label, const std::string& var) {
    if (label == "1") return var;
    if (label.find('*') != std::string::npos) return "(" + label + ")(" + var + ")";
    return label + "(" + var + ")";
}

std::string twist_render(const std::string& label) {
    if (label == "1") return "V";
    if (label.find('*') != std::string::npos || label.find('^') != std::string::npos)
        return "^(" + label + ") V";
    return "^" + label + " V";
}

std::string set_display(const FiniteGroup& g) {
    std::vector<std::string> names(g.elems().begin(), g.elems().end());
    return "{" + join(names, ", ") + "}";
}

std::string tuple_display(const std::vector<std::string>& labels) {
    return "(" + join(labels, ", ") + ")";
}

std::vector<std::string> labels_at(const MarkedGroup& m, size_t start, size_t len) {
    std::vector<std::string> out;
    for (size_t i = start; i < start + len; ++i) out.push_back(m.rho_label(i));
    return out;
}

std::vector<std::string> labels_of(const MarkedGroup& m, const std::vector<size_t>& pos) {
    std::vector<std::string> out;
    for (size_t p : pos) out.push_back(m.rho_label(p));
    return out;
}

std::string ambient_product(const AxiomScheme& s) {
    std::vector<std::string> parts;
    for (const auto& l : s.rho) parts.push_back(twist_render(l));
    return join(parts, " x ");
}

std::string rho_applied(const AxiomScheme& s, const std::string& var) {
    std::vector<std::string> parts;
    for (const auto& l : s.rho) parts.push_back(apply_render(l, var));
    return tuple_display(parts);
}

std::string field_sentence(const AxiomScheme& s, const std::string& field_name,
                           bool with_identity = true) {
    std::vector<std::string> named;
    for (const auto& l : s.rho)
        if (with_identity || l != "1") named.push_back(l);
    return "The structure (K, " + join(named, ", ") + ") is a " + field_name +
           " such that for each " + s.pair + "-pair (V, W), there is x in V(K) such that " +
           rho_applied(s, "x") + " in W(K).";
}

// Crucial relations g t = t alpha(g) of one stable letter, skipping the
// identity of the edge group.
std::string crucial_relations(const MarkedGroup& m, const groups::LoopMarking& loop) {
    const auto& ab = m.alphabet();
    const Word t{groups::WLetter{static_cast<uint32_t>(ab.id_of(loop.letter)), 1}};
    std::vector<std::string> rels;
    for (size_t k = 0; k < loop.edge_elems.size(); ++k) {
        if (m.oracle->is_identity(loop.edge_elems[k])) continue;
        rels.push_back(ab.render(word_concat(loop.edge_elems[k], t)) + " = " +
                       ab.render(word_concat(t, loop.alpha_images[k])));
    }
    return join(rels, ", ");
}

std::string alpha_line(const MarkedGroup& m, const groups::LoopMarking& loop,
                       const std::string& alpha_name) {
    const auto& ab = m.alphabet();
    std::vector<std::string> from, to;
    for (const auto& w : loop.edge_elems) from.push_back(ab.render(w));
    for (const auto& w : loop.alpha_images) to.push_back(ab.render(w));
    std::string line = alpha_name + " : " + tuple_display(from) + " -> " + tuple_display(to);
    std::string rels = crucial_relations(m, loop);
    if (!rels.empty()) line += "; crucial relations: " + rels;
    return line;
}

void free_scheme(AxiomScheme& s, const MarkedGroup& m) {
    const unsigned rank = m.free_rank;
    s.group = rank == 1 ? "Z" : "F_" + std::to_string(rank);
    s.pair = s.group;
    std::vector<std::string> projections;
    for (const auto& l : s.rho) projections.push_back("W -> " + twist_render(l));
    if (rank == 1)
        s.pair_conditions.push_back("Both projections " + projections[0] + " and " +
                                    projections[1] + " are dominant.");
    else
        s.pair_conditions.push_back("All the projections " + join(projections, ", ") +
                                    " are dominant.");
    s.sentence = field_sentence(s, "difference field", false);
}

void finite_scheme(AxiomScheme& s, const MarkedGroup& m) {
    s.group = "G0 = " + set_display(*m.finite);
    s.pair = "G0";
    s.notation.push_back("g = " + tuple_display(s.rho) + " enumerates G0");
    s.notation.push_back("for g_i in G0, lambda^i_V : ^g V -> ^(g_i g) V is the coordinate "
                         "permutation induced by left multiplication by g_i");
    std::vector<std::string> twists;
    for (const auto& l : s.rho) twists.push_back(twist_render(l));
    s.pair_conditions.push_back("W projects generically on each of " + join(twists, ", ") + ".");
    s.pair_conditions.push_back(
        "For each g_i in G0, lambda^i_V(W) = ^g_i W (the G0-iterativity condition).");
    s.sentence = field_sentence(s, "G0-field");
}

void tree_scheme(AxiomScheme& s, const MarkedGroup& m) {
    const auto& graph = *m.graph;
    s.pair = "pi_1(B(-), T)";
    std::vector<std::string> vgroups;
    for (const auto& v : graph.vertices) vgroups.push_back(v.name + " = " + set_display(v.group));
    s.group = "pi_1(B(-), T) with vertex groups " + join(vgroups, ", ");
    for (const auto& v : graph.vertices)
        s.notation.push_back("rho_" + v.name + " = " + tuple_display(labels_of(m, v.rho_pos)) +
                             " is the sub-tuple of rho marking " + v.name);
    s.notation.push_back("for each vertex i, W_i is the Zariski closure of the projection of W "
                         "on ^rho_i V");
    for (const auto& v : graph.vertices)
        s.pair_conditions.push_back("(V, W_" + v.name + ") is a " + v.name + "-pair.");
    s.sentence = field_sentence(s, "G-field");
}

void hnn_scheme(AxiomScheme& s, const MarkedGroup& m) {
    const auto& graph = *m.graph;
    s.pair = "G";
    const std::string g0 = set_display(graph.vertices[0].group);
    if (graph.loops.size() == 1) {
        s.group = "G0*_alpha with G0 = " + g0;
    } else {
        std::vector<std::string> letters;
        for (const auto& loop : graph.loops) letters.push_back(loop.letter);
        s.group = "iterated HNN extension of G0 = " + g0 + " with stable letters " +
                  join(letters, ", ");
    }
    std::string blocks = "rho_0 = " + tuple_display(labels_at(m, 0, graph.rho_t_len));
    for (const auto& loop : graph.loops)
        blocks += "; " + loop.letter + "*rho_0 = " +
                  tuple_display(labels_at(m, loop.block_start, graph.rho_t_len));
    s.notation.push_back(blocks);
    for (const auto& loop : graph.loops)
        s.notation.push_back(alpha_line(
            m, loop, graph.loops.size() == 1 ? "alpha" : "alpha_" + loop.letter));
    s.notation.push_back("W_rho' is the Zariski closure of the projection of W on ^rho' V");
    for (const auto& loop : graph.loops)
        s.pair_conditions.push_back("^" + loop.letter + " W_rho_0 = W_" + loop.letter +
                                    "*rho_0.");
    s.pair_conditions.push_back("(V, W_rho_0) is a G0-pair.");
    s.sentence = field_sentence(s, "G-field");
}

void graph_scheme(AxiomScheme& s, const MarkedGroup& m) {
    const auto& graph = *m.graph;
    s.pair = "G";
    std::vector<std::string> vgroups, letters;
    for (const auto& v : graph.vertices) vgroups.push_back(v.name + " = " + set_display(v.group));
    for (const auto& loop : graph.loops) letters.push_back(loop.letter);
    s.group = "pi_1(G(-), Y) with vertex groups " + join(vgroups, ", ") +
              " and stable letters " + join(letters, ", ");
    std::string blocks = "rho_T = " + tuple_display(labels_at(m, 0, graph.rho_t_len));
    for (const auto& loop : graph.loops)
        blocks += "; " + loop.letter + "*rho_T = " +
                  tuple_display(labels_at(m, loop.block_start, graph.rho_t_len));
    s.notation.push_back(blocks);
    for (const auto& loop : graph.loops)
        s.notation.push_back(alpha_line(m, loop, "alpha_" + loop.letter));
    s.notation.push_back("W_rho' is the Zariski closure of the projection of W on ^rho' V");
    for (const auto& loop : graph.loops)
        s.pair_conditions.push_back("^" + loop.letter + " W_rho_T = W_" + loop.letter +
                                    "*rho_T.");
    s.pair_conditions.push_back("(V, W_rho_T) is a pi_1(G(-), T)-pair.");
    s.sentence = field_sentence(s, "G-field");
}

void product_scheme(AxiomScheme& s, const MarkedGroup& m) {
    const auto& prod = *m.product;
    const std::string fn = "F_" + std::to_string(prod.rank);
    s.pair = "G";
    s.group = fn + " x G0 with G0 = " + set_display(*prod.g0);
    std::vector<std::string> sbar, gbar;
    for (size_t j = 0; j <= prod.rank; ++j) sbar.push_back(s.rho[j]);
    for (size_t a = 0; a * (prod.rank + 1) < s.rho.size(); ++a)
        gbar.push_back(s.rho[a * (prod.rank + 1)]);
    s.notation.push_back("sbar = " + tuple_display(sbar) + "; gbar = " + tuple_display(gbar) +
                         "; rho = sbar*gbar");
    s.notation.push_back("W_sbar and W_gbar are the Zariski closures of the projections of W on "
                         "^sbar V and ^gbar V");
    s.pair_conditions.push_back("W projects dominantly on V.");
    s.pair_conditions.push_back("(W_gbar, W) is an " + fn + "-pair.");
    s.pair_conditions.push_back("(W_sbar, W) is a G0-pair.");
    s.sentence = field_sentence(s, "G-field");
}

void dinfty_scheme(AxiomScheme& s, const MarkedGroup& m) {
    s.pair = "D_infinity";
    s.group = "D_infinity = Z semidirect C2";
    s.notation.push_back("rho_sigma = " + tuple_display(labels_at(m, 0, 3)) + "; rho_tau = (" +
                         s.rho[1] + ", " + s.rho[4] + ")");
    s.notation.push_back("W_sigma and W_tau are the Zariski closures of the projections of W on "
                         "^rho_sigma V and ^rho_tau V");
    s.notation.push_back("tw^4_6 exchanges the fourth and the sixth coordinate blocks of "
                         "^rho V");
    s.pair_conditions.push_back("W projects dominantly on V.");
    s.pair_conditions.push_back("(W_sigma, tw^4_6(W)) is a C2-pair.");
    s.pair_conditions.push_back("(W_tau, W) is a (Z, rho_sigma)-pair.");
    s.sentence = field_sentence(s, "G-field");
}

} // namespace

AxiomScheme emit_axiom_scheme(const MarkedGroup& m) {
    AxiomScheme s;
    const bool dinfty = m.kind == GroupKind::Product && m.product->dinfty;
    s.kind = dinfty ? "product-dinfty" : kind_name(m.kind);
    const auto& ab = m.alphabet();
    for (size_t i = 0; i < m.arity(); ++i) s.rho.push_back(m.rho_label(i));

    const auto mat = rho_product_matrix(m);
    for (const auto& row : mat) {
        std::vector<std::string> r;
        for (const auto& w : row) r.push_back(ab.render(w));
        s.matrix.push_back(std::move(r));
    }

    const auto dc = diagonal_classes(m);
    for (const auto& cls : dc.classes) {
        std::vector<std::pair<size_t, size_t>> shifted;
        for (auto [i, j] : cls) shifted.push_back({i + 1, j + 1});
        s.classes.push_back(std::move(shifted));
    }
    for (const auto& rep : dc.reps) s.reps.push_back(ab.render(rep));
    for (size_t c = 0; c < s.classes.size(); ++c) {
        const auto& cls = s.classes[c];
        for (size_t a = 0; a < cls.size(); ++a)
            for (size_t b = a + 1; b < cls.size(); ++b) {
                DiagonalCondition cond;
                cond.relation = {cls[a].first, cls[a].second, cls[b].first, cls[b].second};
                cond.product = s.reps[c];
                cond.text = "x_(" + std::to_string(cls[a].first) + "," +
                            std::to_string(cls[a].second) + ") = x_(" +
                            std::to_string(cls[b].first) + "," + std::to_string(cls[b].second) +
                            ")";
                s.diagonal_conditions.push_back(std::move(cond));
            }
    }

    switch (m.kind) {
    case GroupKind::Free: free_scheme(s, m); break;
    case GroupKind::Finite: finite_scheme(s, m); break;
    case GroupKind::TreeAmalgam: tree_scheme(s, m); break;
    case GroupKind::Hnn: hnn_scheme(s, m); break;
    case GroupKind::GraphOfGroups: graph_scheme(s, m); break;
    case GroupKind::Product:
        if (dinfty)
            dinfty_scheme(s, m);
        else
            product_scheme(s, m);
        break;
    default: throw ValidationError("unsupported marking kind for the axiom scheme");
    }

    s.template_line =
        "for each " + s.pair + "-pair (V, W): exists x (x in V and rho(x) in W)";
    s.citation = "If G is a finitely generated virtually free group, then the theory G-TCF "
                 "exists.";
    return s;
}

std::string render_text(const AxiomScheme& s) {
    std::ostringstream out;
    out << "axiom scheme: G-TCF for G = " << s.group << "\n";
    out << "kind: " << s.kind << "\n";
    out << "marking: rho = " << tuple_display(s.rho) << "\n";
    out << "\n";

    out << "product matrix rho.rho:\n";
    std::vector<size_t> width(s.rho.size(), 0);
    for (const auto& row : s.matrix)
        for (size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    for (const auto& row : s.matrix) {
        out << "  [ ";
        for (size_t j = 0; j < row.size(); ++j) {
            out << row[j] << std::string(width[j] - row[j].size(), ' ');
            if (j + 1 < row.size()) out << "  ";
        }
        out << " ]\n";
    }
    out << "\n";

    out << "diagonal classes (positions (i, j) grouped by the product rho_i rho_j):\n";
    for (size_t c = 0; c < s.classes.size(); ++c) {
        out << "  class " << c + 1 << ": product " << s.reps[c] << " at";
        for (size_t a = 0; a < s.classes[c].size(); ++a)
            out << (a ? ", " : " ") << "(" << s.classes[c][a].first << ", "
                << s.classes[c][a].second << ")";
        out << "\n";
    }
    out << "\n";

    out << "diagonal conditions on ^(rho.rho)V (each nontrivial relation of P once):\n";
    if (s.diagonal_conditions.empty()) out << "  none\n";
    for (const auto& d : s.diagonal_conditions) {
        const auto& r = d.relation;
        out << "  " << d.text << "    [rho_" << r[0] << " rho_" << r[1] << " = rho_" << r[2]
            << " rho_" << r[3] << " = " << d.product << "]\n";
    }
    out << "\n";

    out << "pair conditions (for (V, W) with W inside ^rho V = " << ambient_product(s)
        << "):\n";
    for (const auto& n : s.notation) out << "  notation: " << n << "\n";
    for (size_t i = 0; i < s.pair_conditions.size(); ++i)
        out << "  (" << i + 1 << ") " << s.pair_conditions[i] << "\n";
    out << "\n";

    out << "scheme:\n";
    out << "  " << s.template_line << "\n";
    out << "  " << s.sentence << "\n";
    out << "\n";

    out << "by the main theorem:\n";
    out << "  " << s.citation << "\n";
    return out.str();
}

AxiomInstance emit_axiom_instance(const MarkedGroup& m, const BlockVariety& v,
                                  const BlockVariety& w, const GPairOptions& opts) {
    GPairReport report = gpairs::check_g_pair(v, w, m, opts);
    if (!report.verdict) throw gpairs::PairCheckFailed(std::move(report));

    AxiomInstance inst;
    const AxiomScheme scheme = emit_axiom_scheme(m);
    inst.group = scheme.group;
    inst.kind = report.kind;
    inst.report = std::move(report);

    // Variables of W rendered as rho_i applied to the coordinates of V.
    std::vector<std::string> display(w.ring()->nvars());
    std::vector<bool> assigned(w.blocks().size(), false);
    for (size_t i = 0; i < m.arity(); ++i)
        for (size_t j = 0; j < v.blocks().size(); ++j) {
            const int b = w.block_of(word_concat(m.rho[i], v.blocks()[j].label));
            if (b < 0 || assigned[b]) continue;
            assigned[b] = true;
            const size_t off = w.var_offset(b);
            for (size_t p = 0; p < v.blocks()[j].width(); ++p)
                display[off + p] = apply_render(m.rho_label(i), v.blocks()[j].vars[p]);
        }
    const RingPtr shown = PolyRing::make(w.field(), display);
    std::vector<Poly> images;
    for (size_t k = 0; k < display.size(); ++k) images.push_back(Poly::variable(shown, k));

    std::vector<std::string> eqs;
    for (const auto& g : v.ideal().gens()) eqs.push_back(g.to_string() + " = 0");
    for (const auto& g : w.ideal().gens())
        eqs.push_back(apply_hom(g, shown, images, FieldAut{}).to_string() + " = 0");

    const std::string xs = join(v.ring()->vars(), ", ");
    std::vector<std::string> applied;
    for (size_t i = 0; i < m.arity(); ++i)
        for (const auto& name : v.ring()->vars())
            applied.push_back(apply_render(m.rho_label(i), name));
    inst.sentence = "there is x = (" + xs + ") in V(K) such that " + tuple_display(applied) +
                    " in W(K)";
    inst.inlined =
        "exists " + xs + ": " + (eqs.empty() ? std::string("true") : join(eqs, " and "));

    const auto block_line = [](const BlockVariety& bv) {
        std::vector<std::string> parts;
        for (size_t b = 0; b < bv.blocks().size(); ++b)
            parts.push_back("(" + bv.label_string(b) + ": " + join(bv.blocks()[b].vars, ", ") +
                            ")");
        std::vector<std::string> gens;
        for (const auto& g : bv.ideal().gens()) gens.push_back(g.to_string());
        return join(parts, ", ") + "; I = (" + (gens.empty() ? "0" : join(gens, ", ")) + ")";
    };

    std::ostringstream out;
    out << "axiom instance: G-TCF for G = " << inst.group << "\n";
    out << "pair check: passed (" << inst.kind << ")\n";
    out << "V: " << block_line(v) << "\n";
    out << "W: " << block_line(w) << "\n";
    out << "sentence:\n  " << inst.sentence << "\n";
    out << "inlined:\n  " << inst.inlined << "\n";
    inst.text = out.str();
    return inst;
}

} // namespace gtcf::axioms
