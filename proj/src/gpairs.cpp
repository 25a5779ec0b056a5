#include "gtcf/gpairs.hpp"

#include "gtcf/errors.hpp"

#include <map>
#include <utility>

namespace gtcf::gpairs {

using algebra::apply_hom;
using algebra::MonOrder;
using algebra::PolyRing;
using groups::diagonal_classes;
using groups::GroupKind;
using groups::kind_name;
using groups::word_concat;
using variety::Block;
using variety::project_closure;
using variety::same_variety;
using variety::twist;

namespace {

std::string render_polys(const std::vector<Poly>& ps) {
    if (ps.empty())
        return "0";
    std::string out;
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i)
            out += ", ";
        out += ps[i].to_string();
    }
    return out;
}

std::string render_word(const MarkedGroup& m, const Word& w) {
    return m.alphabet().render(m.oracle->normal_form(w));
}

void require_marking_match(const variety::GField& gf, const MarkedGroup& m) {
    const MarkedGroup& g = gf.group;
    const bool ok = g.kind == m.kind && g.identity_index == m.identity_index && g.rho == m.rho &&
                    g.alphabet().names() == m.alphabet().names();
    if (!ok)
        throw ValidationError("marked group does not match the action of the varieties");
}

void require_payload(const MarkedGroup& m) {
    switch (m.kind) {
    case GroupKind::Free:
        return;
    case GroupKind::Finite:
        if (!m.finite)
            throw ValidationError("unsupported marked group: missing finite group data");
        return;
    case GroupKind::TreeAmalgam:
    case GroupKind::Hnn:
    case GroupKind::GraphOfGroups:
        if (!m.graph)
            throw ValidationError("unsupported marked group: missing graph data");
        return;
    case GroupKind::Product:
        if (!m.product)
            throw ValidationError("unsupported marked group: missing product data");
        return;
    }
    throw ValidationError("unsupported marked group kind");
}

// W must consist of exactly the blocks rho_i * l over the labels l of V.
void require_cover(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m) {
    if (v.action() != w.action())
        throw ValidationError("pair varieties must share one action");
    require_marking_match(*v.action(), m);
    require_payload(m);
    std::vector<bool> covered(w.blocks().size(), false);
    for (size_t i = 0; i < m.arity(); ++i) {
        for (size_t t = 0; t < v.blocks().size(); ++t) {
            const Word lab = word_concat(m.rho[i], v.blocks()[t].label);
            const int b = w.block_of(lab);
            if (b < 0)
                throw ValidationError("block mismatch: no block labeled '" +
                                      render_word(m, lab) + "'");
            if (w.blocks()[static_cast<size_t>(b)].width() != v.blocks()[t].width())
                throw ValidationError("block mismatch: block '" + w.label_string(b) +
                                      "' does not match the width of '" + v.label_string(t) +
                                      "'");
            covered[static_cast<size_t>(b)] = true;
        }
    }
    for (size_t b = 0; b < covered.size(); ++b)
        if (!covered[b])
            throw ValidationError("block mismatch: unexpected block '" + w.label_string(b) +
                                  "'");
}

// Generators of I(src) renamed into the ring of dst along the label matching.
std::vector<Poly> mapped_gens(const BlockVariety& src, const BlockVariety& dst) {
    std::vector<size_t> var_map(src.ring()->nvars());
    for (size_t j = 0; j < src.blocks().size(); ++j) {
        const int i = dst.block_of(src.blocks()[j].label);
        if (i < 0)
            throw ValidationError("block mismatch: no block labeled '" + src.label_string(j) +
                                  "'");
        if (dst.blocks()[static_cast<size_t>(i)].width() != src.blocks()[j].width())
            throw ValidationError("block mismatch: block '" + src.label_string(j) +
                                  "' changes width");
        const size_t off = src.var_offset(j);
        const size_t dst_off = dst.var_offset(static_cast<size_t>(i));
        for (size_t t = 0; t < src.blocks()[j].width(); ++t)
            var_map[off + t] = dst_off + t;
    }
    std::vector<Poly> images;
    images.reserve(var_map.size());
    for (size_t i : var_map)
        images.push_back(Poly::variable(dst.ring(), i));
    std::vector<Poly> out;
    out.reserve(src.ideal().gens().size());
    for (const auto& g : src.ideal().gens())
        out.push_back(apply_hom(g, dst.ring(), images, dst.field().aut(1)));
    return out;
}

std::vector<Word> block_labels(const BlockVariety& x) {
    std::vector<Word> out;
    out.reserve(x.blocks().size());
    for (const auto& b : x.blocks())
        out.push_back(b.label);
    return out;
}

std::vector<Word> shifted_labels(const Word& w, const std::vector<Word>& labels) {
    std::vector<Word> out;
    out.reserve(labels.size());
    for (const auto& l : labels)
        out.push_back(word_concat(w, l));
    return out;
}

// Normal forms with duplicates dropped; products h * label collide whenever
// the base blocks already sit on marking words.
std::vector<Word> unique_words(const MarkedGroup& m, const std::vector<Word>& ws) {
    std::vector<Word> out;
    out.reserve(ws.size());
    for (const auto& w : ws) {
        Word nf = m.oracle->normal_form(w);
        bool seen = false;
        for (const auto& u : out)
            if (u == nf) {
                seen = true;
                break;
            }
        if (!seen)
            out.push_back(std::move(nf));
    }
    return out;
}

// Runs the conditions shared by the pair predicates on (base, total) for the
// acting words hs: containment of total in every twisted copy of base,
// dominance of every projection, and for finite-type hs the iterativity
// conditions. Check names get the given prefix.
struct PairEngine {
    const MarkedGroup& m;
    const GPairOptions& opts;
    GPairReport rep;

    void add(std::string name, bool pass, std::string witness = "") {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    }

    void containment(const std::string& prefix, const BlockVariety& base,
                     const BlockVariety& total, const std::vector<Word>& hs) {
        bool pass = true;
        std::string witness;
        for (const auto& h : hs) {
            const BlockVariety target = twist(base, h);
            for (const auto& g : mapped_gens(target, total)) {
                if (total.ideal().contains(g, opts.limits))
                    continue;
                pass = false;
                witness = "the ^" + render_word(m, h) + " factor requires " + g.to_string();
                break;
            }
            if (!pass)
                break;
        }
        add(prefix + "containment", pass, std::move(witness));
    }

    void dominance(const std::string& prefix, const BlockVariety& base,
                   const BlockVariety& total, const std::vector<Word>& hs) {
        for (const auto& h : hs) {
            const BlockVariety target = twist(base, h);
            const BlockVariety proj =
                project_closure(total, block_labels(target), opts.limits);
            const bool ok = same_variety(proj, target, opts.limits);
            std::string witness;
            if (!ok)
                witness = "projection closure is Z(" + render_polys(proj.ideal().gens()) +
                          ") but the factor is Z(" + render_polys(mapped_gens(target, proj)) +
                          ")";
            add(prefix + "dominant[" + render_word(m, h) + "]", ok, std::move(witness));
        }
    }

    void iterativity(const std::string& prefix, const BlockVariety& total,
                     const std::vector<Word>& hs) {
        for (const auto& h : hs) {
            if (m.oracle->is_identity(h))
                continue;
            const BlockVariety moved = twist(total, h);
            const bool ok = same_variety(total, moved, opts.limits);
            std::string witness;
            if (!ok)
                witness = "the ^" + render_word(m, h) + " copy is Z(" +
                          render_polys(mapped_gens(moved, total)) + ") but the variety is Z(" +
                          render_polys(total.ideal().gens()) + ")";
            add(prefix + "iterativity[" + render_word(m, h) + "]", ok, std::move(witness));
        }
    }

    void run(const std::string& prefix, const BlockVariety& base, const BlockVariety& total,
             const std::vector<Word>& hs, bool iterate) {
        containment(prefix, base, total, hs);
        dominance(prefix, base, total, hs);
        if (iterate)
            iterativity(prefix, total, hs);
    }
};

HomData hom_between(const BlockVariety& from, const BlockVariety& to, const MarkedGroup& m) {
    HomData out;
    out.maps.reserve(m.arity());
    for (size_t i = 0; i < m.arity(); ++i) {
        GeneratorMap g;
        g.generator = m.rho[i];
        g.constants = from.action()->act(m.rho[i]);
        g.images.assign(from.ring()->nvars(), Poly());
        for (size_t t = 0; t < from.blocks().size(); ++t) {
            const int b = to.block_of(word_concat(m.rho[i], from.blocks()[t].label));
            if (b < 0)
                throw ValidationError("block mismatch: no block labeled '" +
                                      render_word(m, word_concat(m.rho[i],
                                                                 from.blocks()[t].label)) +
                                      "'");
            const size_t off = from.var_offset(t);
            const size_t to_off = to.var_offset(static_cast<size_t>(b));
            for (size_t k = 0; k < from.blocks()[t].width(); ++k)
                g.images[off + k] = Poly::variable(to.ring(), to_off + k);
        }
        out.maps.push_back(std::move(g));
    }
    return out;
}

void check_finite_equivalences(PairEngine& eng, const BlockVariety& v, const BlockVariety& w,
                               const MarkedGroup& m) {
    for (size_t i = 0; i < m.arity(); ++i) {
        if (m.oracle->is_identity(m.rho[i]))
            continue;
        const BlockVariety moved = twist(w, m.rho[i]);
        bool pass = true;
        std::string witness;
        for (const auto& g : mapped_gens(moved, w)) {
            if (w.ideal().contains(g, eng.opts.limits))
                continue;
            pass = false;
            witness = "the ^" + render_word(m, m.rho[i]) + " copy requires " + g.to_string();
            break;
        }
        eng.add("lambda-inside[" + render_word(m, m.rho[i]) + "]", pass, std::move(witness));
    }
    const BlockVariety wp = prolong(v, w, m, eng.opts.limits);
    {
        const bool ok = same_variety(w, wp, eng.opts.limits);
        std::string witness;
        if (!ok)
            witness = "prolongation is Z(" + render_polys(wp.ideal().gens()) +
                      ") but the variety is Z(" + render_polys(w.ideal().gens()) + ")";
        eng.add("lambda-equals-prolongation", ok, std::move(witness));
    }
    for (size_t i = 0; i < m.arity(); ++i) {
        const BlockVariety moved = twist(w, m.rho[i]);
        const bool ok = same_variety(wp, moved, eng.opts.limits);
        std::string witness;
        if (!ok)
            witness = "prolongation is Z(" + render_polys(mapped_gens(wp, moved)) +
                      ") but the ^" + render_word(m, m.rho[i]) + " copy is Z(" +
                      render_polys(moved.ideal().gens()) + ")";
        eng.add("prolongation-dominates[" + render_word(m, m.rho[i]) + "]", ok,
                std::move(witness));
    }
}

void check_graph_pair(PairEngine& eng, const BlockVariety& v, const BlockVariety& w,
                      const MarkedGroup& m) {
    const auto& graph = *m.graph;
    eng.containment("", v, w, m.rho);
    std::vector<BlockVariety> vertex_parts;
    vertex_parts.reserve(graph.vertices.size());
    for (const auto& vert : graph.vertices) {
        std::vector<Word> keep;
        for (size_t p : vert.rho_pos)
            for (const auto& bl : v.blocks())
                keep.push_back(word_concat(m.rho[p], bl.label));
        vertex_parts.push_back(project_closure(w, unique_words(m, keep), eng.opts.limits));
    }
    for (const auto& loop : graph.loops) {
        const int letter = m.alphabet().id_of(loop.letter);
        if (letter < 0)
            throw ValidationError("unsupported marked group: unknown stable letter '" +
                                  loop.letter + "'");
        const Word t{{static_cast<uint32_t>(letter), 1}};
        for (size_t vi = 0; vi < graph.vertices.size(); ++vi) {
            const BlockVariety shifted = project_closure(
                w, shifted_labels(t, block_labels(vertex_parts[vi])), eng.opts.limits);
            const BlockVariety moved = twist(vertex_parts[vi], t);
            const bool ok = same_variety(moved, shifted, eng.opts.limits);
            std::string witness;
            if (!ok)
                witness = "the shifted part is Z(" + render_polys(shifted.ideal().gens()) +
                          ") but the ^" + loop.letter + " copy is Z(" +
                          render_polys(mapped_gens(moved, shifted)) + ")";
            eng.add("shift[" + loop.letter + "][" + graph.vertices[vi].name + "]", ok,
                    std::move(witness));
        }
    }
    for (size_t vi = 0; vi < graph.vertices.size(); ++vi) {
        std::vector<Word> hs;
        for (size_t p : graph.vertices[vi].rho_pos)
            hs.push_back(m.rho[p]);
        eng.run("B[" + graph.vertices[vi].name + "].", v, vertex_parts[vi], hs, true);
    }
    if (m.kind == GroupKind::GraphOfGroups)
        eng.dominance("", v, w, m.rho);
}

void check_product_pair(PairEngine& eng, const BlockVariety& v, const BlockVariety& w,
                        const MarkedGroup& m) {
    eng.containment("", v, w, m.rho);
    eng.dominance("", v, w, {m.rho[m.identity_index]});
    const auto part = [&](const std::vector<Word>& hs) {
        std::vector<Word> keep;
        for (const auto& h : hs)
            for (const auto& bl : v.blocks())
                keep.push_back(word_concat(h, bl.label));
        return project_closure(w, unique_words(m, keep), eng.opts.limits);
    };
    if (m.product->dinfty) {
        // The reflected half of the marking is realigned by the label
        // matching, so the positional swap of its outer slots (the classical
        // tw46 step) needs no explicit move.
        const std::vector<Word> sigmas{m.rho[0], m.rho[1], m.rho[2]};
        const std::vector<Word> taus{m.rho[1], m.rho[4]};
        eng.run("C2.", part(sigmas), w, taus, true);
        eng.run("Z.", part(taus), w, sigmas, false);
        return;
    }
    const unsigned rank = m.product->rank;
    std::vector<Word> sigmas, gs;
    for (size_t j = 0; j <= rank; ++j)
        sigmas.push_back(m.rho[j]);
    for (size_t a = 0; a * (rank + 1) < m.arity(); ++a)
        gs.push_back(m.rho[a * (rank + 1)]);
    eng.run("F.", part(gs), w, sigmas, false);
    eng.run("G0.", part(sigmas), w, gs, true);
}

} // namespace

const PairCheck* GPairReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

bool GPairReport::passed(const std::string& name) const {
    const PairCheck* c = find(name);
    return c != nullptr && c->pass;
}

PairCheckFailed::PairCheckFailed(GPairReport r)
    : std::runtime_error([&r] {
          for (const auto& c : r.checks)
              if (!c.pass)
                  return "pair check failed: " + c.name;
          return std::string("pair check failed");
      }()),
      report(std::move(r)) {}

StageCheckFailed::StageCheckFailed(size_t s, GPairReport r)
    : std::runtime_error("tower stage " + std::to_string(s) + " failed its pair check"),
      stage(s), report(std::move(r)) {}

GPairReport check_g_pair(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                         const GPairOptions& opts) {
    require_cover(v, w, m);
    PairEngine eng{m, opts, {}};
    eng.rep.note = "irreducibility assumed, not verified";
    switch (m.kind) {
    case GroupKind::Free:
        eng.rep.kind = kind_name(m.kind);
        eng.run("", v, w, m.rho, false);
        break;
    case GroupKind::Finite:
        eng.rep.kind = kind_name(m.kind);
        eng.run("", v, w, m.rho, true);
        if (opts.debug_equivalences)
            check_finite_equivalences(eng, v, w, m);
        break;
    case GroupKind::TreeAmalgam:
    case GroupKind::Hnn:
    case GroupKind::GraphOfGroups:
        eng.rep.kind = kind_name(m.kind);
        check_graph_pair(eng, v, w, m);
        break;
    case GroupKind::Product:
        eng.rep.kind = m.product->dinfty ? "product-dinfty" : "product";
        check_product_pair(eng, v, w, m);
        break;
    }
    eng.rep.verdict = true;
    for (const auto& c : eng.rep.checks)
        eng.rep.verdict = eng.rep.verdict && c.pass;
    return std::move(eng.rep);
}

BlockVariety prolong(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                     const Limits& limits) {
    require_cover(v, w, m);
    const auto& oracle = *m.oracle;

    std::map<Word, size_t> index;
    std::vector<Word> labels;
    std::vector<size_t> widths;
    std::vector<std::vector<size_t>> cls(m.arity(),
                                         std::vector<size_t>(w.blocks().size()));
    for (size_t i = 0; i < m.arity(); ++i) {
        for (size_t j = 0; j < w.blocks().size(); ++j) {
            const Word nf = oracle.normal_form(word_concat(m.rho[i], w.blocks()[j].label));
            auto it = index.find(nf);
            if (it == index.end()) {
                it = index.emplace(nf, labels.size()).first;
                labels.push_back(nf);
                widths.push_back(w.blocks()[j].width());
            } else if (widths[it->second] != w.blocks()[j].width()) {
                throw ValidationError("block mismatch: the class of '" + render_word(m, nf) +
                                      "' mixes widths");
            }
            cls[i][j] = it->second;
        }
    }

    std::vector<Block> blocks;
    std::vector<std::string> names;
    std::vector<size_t> offsets;
    for (size_t c = 0; c < labels.size(); ++c) {
        offsets.push_back(names.size());
        Block b{labels[c], {}};
        for (size_t k = 0; k < widths[c]; ++k) {
            std::string nm = "z" + std::to_string(c + 1);
            if (widths[c] > 1)
                nm += "_" + std::to_string(k + 1);
            b.vars.push_back(nm);
            names.push_back(std::move(nm));
        }
        blocks.push_back(std::move(b));
    }
    const RingPtr ring = PolyRing::make(v.field(), names);

    std::vector<Poly> gens;
    for (size_t i = 0; i < m.arity(); ++i) {
        const FieldAut aut = v.action()->act(m.rho[i]);
        std::vector<Poly> images(w.ring()->nvars());
        for (size_t j = 0; j < w.blocks().size(); ++j) {
            const size_t off = w.var_offset(j);
            for (size_t k = 0; k < w.blocks()[j].width(); ++k)
                images[off + k] = Poly::variable(ring, offsets[cls[i][j]] + k);
        }
        for (const auto& g : w.ideal().gens())
            gens.push_back(apply_hom(g, ring, images, aut));
    }

    std::map<Word, bool> seen;
    for (size_t i = 0; i < m.arity(); ++i) {
        for (size_t j = 0; j < m.arity(); ++j) {
            const Word nf = oracle.normal_form(word_concat(m.rho[i], m.rho[j]));
            if (seen.emplace(nf, true).second == false)
                continue;
            const FieldAut aut = v.action()->act(nf);
            std::vector<Poly> images(v.ring()->nvars());
            for (size_t t = 0; t < v.blocks().size(); ++t) {
                const Word slot = oracle.normal_form(word_concat(nf, v.blocks()[t].label));
                const auto it = index.find(slot);
                if (it == index.end())
                    throw ValidationError("block mismatch: no class for '" +
                                          render_word(m, slot) + "'");
                const size_t off = v.var_offset(t);
                for (size_t k = 0; k < v.blocks()[t].width(); ++k)
                    images[off + k] = Poly::variable(ring, offsets[it->second] + k);
            }
            for (const auto& g : v.ideal().gens())
                gens.push_back(apply_hom(g, ring, images, aut));
        }
    }

    const MonOrder lex = MonOrder::lex(ring->nvars());
    std::vector<Poly> basis = algebra::groebner(ring, std::move(gens), lex, limits);
    return BlockVariety(v.action(), std::move(blocks),
                        Ideal::with_known_basis(ring, std::move(basis), lex));
}

size_t PositionProlongation::var_offset(size_t i, size_t j) const {
    return (i * m + j) * v_width;
}

PositionProlongation prolong_positions(const BlockVariety& v, const BlockVariety& w,
                                       const MarkedGroup& m, const Limits& limits) {
    require_cover(v, w, m);
    const auto& oracle = *m.oracle;
    const size_t mm = m.arity();
    const size_t nv = v.ring()->nvars();

    std::vector<std::string> names;
    names.reserve(mm * mm * nv);
    for (size_t i = 0; i < mm; ++i)
        for (size_t j = 0; j < mm; ++j)
            for (size_t t = 0; t < nv; ++t) {
                std::string nm = "p" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
                if (nv > 1)
                    nm += "_" + std::to_string(t + 1);
                names.push_back(std::move(nm));
            }
    const RingPtr ring = PolyRing::make(v.field(), names);
    PositionProlongation out{ring, {}, mm, nv};

    std::vector<std::pair<size_t, size_t>> rep(w.blocks().size(), {mm, 0});
    for (size_t b = 0; b < w.blocks().size(); ++b) {
        for (size_t j = 0; j < mm && rep[b].first == mm; ++j)
            for (size_t t = 0; t < v.blocks().size(); ++t)
                if (oracle.equal(word_concat(m.rho[j], v.blocks()[t].label),
                                 w.blocks()[b].label)) {
                    rep[b] = {j, t};
                    break;
                }
        if (rep[b].first == mm)
            throw ValidationError("block mismatch: unexpected block '" + w.label_string(b) +
                                  "'");
    }

    std::vector<Poly> gens;
    for (size_t i = 0; i < mm; ++i) {
        const FieldAut aut = v.action()->act(m.rho[i]);
        std::vector<Poly> images(w.ring()->nvars());
        for (size_t b = 0; b < w.blocks().size(); ++b) {
            const size_t slot = out.var_offset(i, rep[b].first) + v.var_offset(rep[b].second);
            const size_t off = w.var_offset(b);
            for (size_t k = 0; k < w.blocks()[b].width(); ++k)
                images[off + k] = Poly::variable(ring, slot + k);
        }
        for (const auto& g : w.ideal().gens())
            gens.push_back(apply_hom(g, ring, images, aut));
    }

    const auto dc = diagonal_classes(m);
    for (const auto& cls : dc.classes) {
        const auto [i0, j0] = cls.front();
        for (size_t s = 1; s < cls.size(); ++s) {
            const auto [i, j] = cls[s];
            for (size_t q = 0; q < nv; ++q)
                gens.push_back(Poly::variable(ring, out.var_offset(i0, j0) + q) -
                               Poly::variable(ring, out.var_offset(i, j) + q));
        }
        const FieldAut aut = v.action()->act(word_concat(m.rho[i0], m.rho[j0]));
        std::vector<Poly> images(nv);
        for (size_t q = 0; q < nv; ++q)
            images[q] = Poly::variable(ring, out.var_offset(i0, j0) + q);
        for (const auto& g : v.ideal().gens())
            gens.push_back(apply_hom(g, ring, images, aut));
    }
    out.ideal = Ideal(ring, std::move(gens));
    out.ideal.lex_basis(limits);
    return out;
}

bool word_problem_diagonal_check(const PositionProlongation& wp, size_t i, size_t j, size_t k,
                                 size_t l, const Limits& limits) {
    if (i >= wp.m || j >= wp.m || k >= wp.m || l >= wp.m)
        throw ValidationError("diagonal check position out of range");
    for (size_t q = 0; q < wp.v_width; ++q) {
        const Poly diff = Poly::variable(wp.ring, wp.var_offset(i, j) + q) -
                          Poly::variable(wp.ring, wp.var_offset(k, l) + q);
        if (!wp.ideal.contains(diff, limits))
            return false;
    }
    return true;
}

KernelTower tower(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                  size_t steps, const GPairOptions& opts) {
    KernelTower out;
    out.stages.push_back(v);
    out.stages.push_back(w);
    const auto verify = [&](size_t stage) {
        GPairReport r =
            check_g_pair(out.stages[stage], out.stages[stage + 1], m, opts);
        if (!r.verdict)
            throw StageCheckFailed(stage, std::move(r));
        out.homs.push_back(hom_between(out.stages[stage], out.stages[stage + 1], m));
        out.reports.push_back(std::move(r));
    };
    verify(0);
    for (size_t s = 0; s < steps; ++s) {
        const size_t n = out.stages.size();
        out.stages.push_back(prolong(out.stages[n - 2], out.stages[n - 1], m, opts.limits));
        verify(n - 1);
    }
    return out;
}

HomData kernel_from_pair(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                         const GPairOptions& opts) {
    GPairReport r = check_g_pair(v, w, m, opts);
    if (!r.verdict)
        throw PairCheckFailed(std::move(r));
    return hom_between(v, w, m);
}

namespace {

std::string fresh_name(const RingPtr& taken, std::string base) {
    while (taken->var_index(base) >= 0)
        base += "_";
    return base;
}

// Joint locus of the named polynomials over the quotient by the relations:
// adjoin one fresh variable per coordinate and eliminate the presentation.
Ideal locus_of(const RingPtr& pres_ring, const std::vector<Poly>& relations,
               const std::vector<std::string>& fresh, const std::vector<Poly>& coords,
               const Limits& limits) {
    std::vector<std::string> names = pres_ring->vars();
    names.insert(names.end(), fresh.begin(), fresh.end());
    const RingPtr big = PolyRing::make(pres_ring->field(), names);
    std::vector<Poly> lift(pres_ring->nvars());
    for (size_t i = 0; i < lift.size(); ++i)
        lift[i] = Poly::variable(big, i);
    const FieldAut one = pres_ring->field().aut(1);
    std::vector<Poly> gens;
    for (const auto& r : relations)
        gens.push_back(apply_hom(r, big, lift, one));
    for (size_t q = 0; q < coords.size(); ++q)
        gens.push_back(Poly::variable(big, pres_ring->nvars() + q) -
                       apply_hom(coords[q], big, lift, one));
    std::vector<bool> keep(big->nvars(), false);
    for (size_t q = 0; q < coords.size(); ++q)
        keep[pres_ring->nvars() + q] = true;
    return algebra::eliminate(Ideal(big, std::move(gens)), keep, limits);
}

} // namespace

KernelPairResult pair_from_kernel(const GFieldPtr& action, const MarkedGroup& m,
                                  const KernelPresentation& pres, const GPairOptions& opts) {
    if (!action)
        throw ValidationError("kernel presentation needs a group action context");
    require_marking_match(*action, m);
    require_payload(m);
    if (!pres.ring)
        throw ValidationError("kernel presentation needs a ring");
    if (!(pres.ring->field() == action->base))
        throw ValidationError("kernel presentation ring must live over the action's base field");
    if (pres.point.empty())
        throw ValidationError("kernel presentation needs a point with coordinates");
    if (pres.images.size() != m.arity())
        throw ValidationError("kernel presentation needs one image tuple per marking position");
    const auto in_ring = [&](const Poly& p) {
        return p.ring() && p.ring()->same_as(*pres.ring);
    };
    for (const auto& r : pres.relations)
        if (!in_ring(r))
            throw ValidationError("kernel presentation relation lives in a different ring");
    for (const auto& p : pres.point)
        if (!in_ring(p))
            throw ValidationError("kernel presentation point lives in a different ring");
    for (const auto& tuple : pres.images) {
        if (tuple.size() != pres.point.size())
            throw ValidationError("kernel presentation image tuples must match the point size");
        for (const auto& p : tuple)
            if (!in_ring(p))
                throw ValidationError("kernel presentation image lives in a different ring");
    }

    const Ideal relations(pres.ring, pres.relations);
    if (relations.is_trivial(opts.limits))
        throw ValidationError("inconsistent presentation: the relations collapse the ring");
    for (size_t q = 0; q < pres.point.size(); ++q)
        if (!relations.contains(pres.images[m.identity_index][q] - pres.point[q], opts.limits))
            throw ValidationError(
                "inconsistent presentation: the identity position must fix the point");

    const size_t n = pres.point.size();
    std::vector<std::string> xnames;
    for (size_t q = 0; q < n; ++q)
        xnames.push_back(fresh_name(pres.ring, "x" + std::to_string(q + 1)));
    const BlockVariety v(action, {Block{m.rho[m.identity_index], xnames}},
                         locus_of(pres.ring, pres.relations, xnames, pres.point, opts.limits));

    std::vector<Block> wblocks;
    std::vector<std::string> ynames;
    std::vector<Poly> ycoords;
    for (size_t i = 0; i < m.arity(); ++i) {
        Block b{m.rho[i], {}};
        for (size_t q = 0; q < n; ++q) {
            std::string nm = "y" + std::to_string(i + 1);
            if (n > 1)
                nm += "_" + std::to_string(q + 1);
            b.vars.push_back(fresh_name(pres.ring, nm));
            ynames.push_back(b.vars.back());
            ycoords.push_back(pres.images[i][q]);
        }
        wblocks.push_back(std::move(b));
    }
    const BlockVariety w(action, std::move(wblocks),
                         locus_of(pres.ring, pres.relations, ynames, ycoords, opts.limits));

    GPairReport report = check_g_pair(v, w, m, opts);
    return {v, w, std::move(report)};
}

} // namespace gtcf::gpairs
