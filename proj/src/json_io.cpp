#include "gtcf/json_io.hpp"

#include "gtcf/errors.hpp"
#include "gtcf/parse.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace gtcf::jsonio {

using algebra::FieldAut;
using algebra::Limits;
using algebra::Poly;
using algebra::PolyRing;
using algebra::RingPtr;
using groups::Word;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object())
        bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        bad(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::string str_at(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_string())
        bad(where, std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

size_t uint_at(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_number_unsigned())
        bad(where, std::string("\"") + key + "\" must be a nonnegative integer");
    return v.get<size_t>();
}

const Json& array_at(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_array())
        bad(where, std::string("\"") + key + "\" must be an array");
    return v;
}

std::vector<std::string> string_list(const Json& v, const std::string& where) {
    if (!v.is_array())
        bad(where, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string())
            bad(where, "expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<std::string> string_list_at(const Json& j, const char* key,
                                        const std::string& where) {
    return string_list(array_at(j, key, where), where + std::string(".") + key);
}

void check_schema(const Json& j, const char* expected, const std::string& where) {
    if (!j.is_object())
        bad(where, "expected an object");
    auto it = j.find("schema");
    if (it == j.end())
        return;
    if (!it->is_string() || it->get<std::string>() != expected)
        bad(where, std::string("unsupported schema, expected \"") + expected + "\"");
}

std::vector<Poly> parse_polys(const RingPtr& ring, const std::vector<std::string>& texts,
                              const std::string& where) {
    std::vector<Poly> out;
    for (const auto& t : texts) {
        try {
            out.push_back(algebra::parse_poly(ring, t));
        } catch (const ValidationError& e) {
            bad(where, "in \"" + t + "\": " + e.what());
        }
    }
    return out;
}

std::vector<std::string> render_polys(const std::vector<Poly>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps)
        out.push_back(p.to_string());
    return out;
}

Word parse_word(const groups::Alphabet& ab, const std::string& text, const std::string& where) {
    try {
        return ab.parse(text);
    } catch (const ValidationError& e) {
        bad(where, std::string("in word \"") + text + "\": " + e.what());
    }
}

} // namespace

Json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(where + ": malformed JSON: " + e.what());
    }
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write " + path);
    out << dump(j);
}

// --- groups ------------------------------------------------------------

FiniteGroup read_finite_group(const Json& j, const std::string& where) {
    auto elems = string_list_at(j, "elements", where);
    const Json& tj = array_at(j, "table", where);
    std::vector<std::vector<uint32_t>> table;
    for (const auto& row : tj) {
        if (!row.is_array())
            bad(where, "\"table\" must be an array of integer rows");
        std::vector<uint32_t> r;
        for (const auto& e : row) {
            if (!e.is_number_unsigned())
                bad(where, "\"table\" entries must be nonnegative integers");
            r.push_back(e.get<uint32_t>());
        }
        table.push_back(std::move(r));
    }
    return FiniteGroup::validate(std::move(elems), std::move(table));
}

Json write_finite_group(const FiniteGroup& g) {
    Json j;
    j["elements"] = g.elems();
    Json table = Json::array();
    for (uint32_t a = 0; a < g.size(); ++a) {
        Json row = Json::array();
        for (uint32_t b = 0; b < g.size(); ++b)
            row.push_back(g.mul(a, b));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    return j;
}

namespace {

size_t vertex_ref(const Json& v, const std::vector<std::string>& names,
                  const std::string& where) {
    if (v.is_number_unsigned()) {
        size_t i = v.get<size_t>();
        if (i >= names.size())
            bad(where, "vertex index " + std::to_string(i) + " out of range");
        return i;
    }
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name)
                return i;
        bad(where, "unknown vertex \"" + name + "\"");
    }
    bad(where, "vertex references are indices or names");
}

std::vector<uint32_t> uint_list_at(const Json& j, const char* key, const std::string& where) {
    const Json& v = array_at(j, key, where);
    std::vector<uint32_t> out;
    for (const auto& e : v) {
        if (!e.is_number_unsigned())
            bad(where, std::string("\"") + key + "\" entries must be nonnegative integers");
        out.push_back(e.get<uint32_t>());
    }
    return out;
}

MarkedGroup graph_group(const Json& j, const std::string& where) {
    std::vector<std::string> names;
    std::vector<FiniteGroup> groups;
    for (const auto& vj : array_at(j, "vertices", where)) {
        const std::string vw = where + ".vertices";
        names.push_back(str_at(vj, "name", vw));
        groups.push_back(read_finite_group(need(vj, "group", vw), vw + ".group"));
    }
    std::vector<bass_serre::GogEdge> edges;
    if (j.contains("edges")) {
        for (const auto& ej : array_at(j, "edges", where)) {
            const std::string ew = where + ".edges";
            bass_serre::GogEdge e;
            e.from = vertex_ref(need(ej, "from", ew), names, ew);
            e.to = vertex_ref(need(ej, "to", ew), names, ew);
            e.edge_group = read_finite_group(need(ej, "edge_group", ew), ew + ".edge_group");
            e.inj_from = uint_list_at(ej, "inj_from", ew);
            e.inj_to = uint_list_at(ej, "inj_to", ew);
            e.in_tree = ej.value("in_tree", true);
            e.letter = ej.value("letter", std::string{});
            edges.push_back(std::move(e));
        }
    }
    auto g = bass_serre::build_graph_of_groups(std::move(names), std::move(groups),
                                               std::move(edges));
    return bass_serre::fundamental_marked_group(g);
}

} // namespace

MarkedGroup read_marked_group(const Json& j) {
    const std::string where = "group spec";
    check_schema(j, "gtcf.group/1", where);
    const auto kind = str_at(j, "kind", where);

    MarkedGroup m;
    if (kind == "free") {
        m = groups::marked_free_group(static_cast<unsigned>(uint_at(j, "rank", where)));
    } else if (kind == "finite") {
        m = groups::marked_finite_group(read_finite_group(j, where));
    } else if (kind == "product") {
        m = groups::marked_product_group(
            static_cast<unsigned>(uint_at(j, "rank", where)),
            read_finite_group(need(j, "g0", where), where + ".g0"));
    } else if (kind == "dihedral") {
        m = groups::marked_dihedral_group();
    } else if (kind == "graph") {
        m = graph_group(j, where);
    } else {
        bad(where, "unknown kind \"" + kind + "\"");
    }

    if (j.contains("rho")) {
        if (m.kind != groups::GroupKind::Free && m.kind != groups::GroupKind::Finite)
            bad(where, "an explicit rho override is only supported for the free and "
                       "finite kinds");
        auto labels = string_list_at(j, "rho", where);
        if (labels.empty())
            bad(where, "\"rho\" must be nonempty");
        std::vector<Word> rho;
        int identity = -1;
        for (const auto& l : labels) {
            rho.push_back(parse_word(m.alphabet(), l, where));
            if (m.oracle->is_identity(rho.back()) && identity < 0)
                identity = static_cast<int>(rho.size()) - 1;
        }
        if (identity < 0)
            bad(where, "\"rho\" must contain the identity");
        m.rho = std::move(rho);
        m.identity_index = static_cast<size_t>(identity);
        groups::validate_marking(m);
    }
    return m;
}

Json write_group_build(const MarkedGroup& m) {
    Json j;
    j["schema"] = "gtcf.marked-group/1";
    j["kind"] = groups::kind_name(m.kind);
    Json rho = Json::array();
    for (size_t i = 0; i < m.arity(); ++i)
        rho.push_back(m.rho_label(i));
    j["rho"] = std::move(rho);
    j["identity"] = m.identity_index + 1;

    const auto mat = groups::rho_product_matrix(m);
    Json rows = Json::array();
    for (const auto& row : mat) {
        Json r = Json::array();
        for (const auto& w : row)
            r.push_back(m.alphabet().render(w));
        rows.push_back(std::move(r));
    }
    j["matrix"] = std::move(rows);

    const auto dc = groups::diagonal_classes(m);
    Json classes = Json::array();
    for (size_t c = 0; c < dc.classes.size(); ++c) {
        Json cls;
        cls["product"] = m.alphabet().render(dc.reps[c]);
        Json pos = Json::array();
        for (const auto& [i, k] : dc.classes[c])
            pos.push_back(Json::array({i + 1, k + 1}));
        cls["positions"] = std::move(pos);
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    return j;
}

GroupBuild read_group_build(const Json& j) {
    const std::string where = "marked-group artifact";
    check_schema(j, "gtcf.marked-group/1", where);
    GroupBuild b;
    b.kind = str_at(j, "kind", where);
    b.rho = string_list_at(j, "rho", where);
    b.identity = uint_at(j, "identity", where);
    for (const auto& row : array_at(j, "matrix", where))
        b.matrix.push_back(string_list(row, where + ".matrix"));
    for (const auto& cls : array_at(j, "classes", where)) {
        b.reps.push_back(str_at(cls, "product", where + ".classes"));
        std::vector<std::pair<size_t, size_t>> positions;
        for (const auto& p : array_at(cls, "positions", where + ".classes")) {
            if (!p.is_array() || p.size() != 2)
                bad(where, "positions must be [i, j] pairs");
            positions.emplace_back(p[0].get<size_t>(), p[1].get<size_t>());
        }
        b.classes.push_back(std::move(positions));
    }
    return b;
}

// --- fields and varieties ------------------------------------------------

BaseField read_base_field(const Json& j, const BaseField& fallback) {
    if (j.is_null())
        return fallback;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "Q")
            return BaseField::rational();
        bad("field spec", "unknown field \"" + s + "\" (use \"Q\" or {\"cyclotomic\": n})");
    }
    if (j.is_object() && j.contains("cyclotomic")) {
        return BaseField::cyclotomic(
            static_cast<unsigned>(uint_at(j, "cyclotomic", "field spec")));
    }
    bad("field spec", "use \"Q\" or {\"cyclotomic\": n}");
}

Json write_base_field(const BaseField& f) {
    if (f.is_rational())
        return Json("Q");
    Json j;
    j["cyclotomic"] = f.n();
    return j;
}

namespace {

std::map<std::string, long> action_map(const Json& field_spec, const std::string& where) {
    std::map<std::string, long> out;
    if (!field_spec.is_object() || !field_spec.contains("action"))
        return out;
    const Json& a = field_spec["action"];
    if (!a.is_object())
        bad(where, "\"action\" must map letters to integer powers");
    for (const auto& [name, v] : a.items()) {
        if (!v.is_number_integer())
            bad(where, "\"action\" must map letters to integer powers");
        out[name] = v.get<long>();
    }
    return out;
}

} // namespace

GFieldPtr read_gfield(const Json& field_spec, MarkedGroup group, const BaseField& fallback) {
    BaseField base = read_base_field(field_spec, fallback);
    return variety::make_gfield(std::move(base), std::move(group),
                                action_map(field_spec, "field spec"));
}

Json write_gfield(const variety::GField& gf) {
    Json action;
    const auto& ab = gf.group.alphabet();
    for (uint32_t id = 0; id < ab.size(); ++id)
        if (gf.letter_act[id].k != 1)
            action[ab.name(id)] = gf.letter_act[id].k;
    if (gf.base.is_rational() && action.is_null())
        return Json("Q");
    Json j = write_base_field(gf.base);
    if (j.is_string()) {
        Json wrapped;
        wrapped["rational"] = true;
        j = std::move(wrapped);
    }
    if (!action.is_null())
        j["action"] = std::move(action);
    return j;
}

BlockVariety read_variety(const Json& j, const GFieldPtr& action) {
    const std::string where = "variety spec";
    check_schema(j, "gtcf.variety/1", where);
    if (j.contains("field") && !j["field"].is_null()) {
        BaseField base = read_base_field(j["field"], action->base);
        if (base != action->base)
            bad(where, "field disagrees with the group action's field");
        for (const auto& [name, k] : action_map(j["field"], where)) {
            int id = action->group.alphabet().id_of(name);
            if (id < 0)
                bad(where, "action assigns the unknown letter '" + name + "'");
            if (action->letter_act[static_cast<size_t>(id)] != base.aut(k))
                bad(where, "action disagrees with the group action on '" + name + "'");
        }
    }
    std::vector<variety::Block> blocks;
    for (const auto& bj : array_at(j, "blocks", where)) {
        const std::string bw = where + ".blocks";
        variety::Block b;
        b.label = parse_word(action->group.alphabet(), str_at(bj, "label", bw), bw);
        b.vars = string_list_at(bj, "vars", bw);
        blocks.push_back(std::move(b));
    }
    std::vector<std::string> gens;
    if (j.contains("ideal"))
        gens = string_list_at(j, "ideal", where);
    return BlockVariety::parse(action, std::move(blocks), gens);
}

Json write_variety(const BlockVariety& v) {
    Json j;
    j["schema"] = "gtcf.variety/1";
    j["field"] = write_gfield(*v.action());
    Json blocks = Json::array();
    for (size_t i = 0; i < v.blocks().size(); ++i) {
        Json b;
        b["label"] = v.label_string(i);
        b["vars"] = v.blocks()[i].vars;
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    j["ideal"] = render_polys(v.ideal().gens());
    return j;
}

// --- pair checking and kernels -------------------------------------------

Json write_pair_report(const gpairs::GPairReport& r) {
    Json j;
    j["schema"] = "gtcf.pair-report/1";
    j["verdict"] = r.verdict;
    j["kind"] = r.kind;
    j["note"] = r.note;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["witness"] = c.witness;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j;
}

gpairs::GPairReport read_pair_report(const Json& j) {
    const std::string where = "pair report";
    check_schema(j, "gtcf.pair-report/1", where);
    gpairs::GPairReport r;
    const Json& v = need(j, "verdict", where);
    if (!v.is_boolean())
        bad(where, "\"verdict\" must be a boolean");
    r.verdict = v.get<bool>();
    r.kind = str_at(j, "kind", where);
    r.note = j.value("note", std::string{});
    for (const auto& cj : array_at(j, "checks", where)) {
        gpairs::PairCheck c;
        c.name = str_at(cj, "name", where + ".checks");
        c.pass = need(cj, "pass", where + ".checks").get<bool>();
        c.witness = cj.value("witness", std::string{});
        r.checks.push_back(std::move(c));
    }
    return r;
}

Json write_tower(const gpairs::KernelTower& t) {
    Json j;
    j["schema"] = "gtcf.tower/1";
    Json stages = Json::array();
    for (const auto& s : t.stages)
        stages.push_back(write_variety(s));
    j["stages"] = std::move(stages);
    Json reports = Json::array();
    for (const auto& r : t.reports)
        reports.push_back(write_pair_report(r));
    j["reports"] = std::move(reports);
    Json homs = Json::array();
    for (const auto& h : t.homs) {
        Json maps = Json::array();
        for (const auto& g : h.maps) {
            Json gj;
            gj["generator"] = g.images.empty() || !g.images.front().ring()
                                  ? Json()
                                  : Json();
            gj["generator"] = Json();
            maps.push_back(std::move(gj));
        }
        Json hj;
        hj["maps"] = std::move(maps);
        homs.push_back(std::move(hj));
    }
    j["homs"] = std::move(homs);
    return j;
}

gpairs::KernelTower read_tower(const Json& j, const GFieldPtr& action) {
    const std::string where = "tower artifact";
    check_schema(j, "gtcf.tower/1", where);
    gpairs::KernelTower t;
    for (const auto& sj : array_at(j, "stages", where))
        t.stages.push_back(read_variety(sj, action));
    for (const auto& rj : array_at(j, "reports", where))
        t.reports.push_back(read_pair_report(rj));
    if (j.contains("homs")) {
        size_t k = 0;
        for (const auto& hj : array_at(j, "homs", where)) {
            if (k + 1 >= t.stages.size())
                bad(where, "more hom entries than consecutive stage pairs");
            gpairs::HomData h;
            for (const auto& gj : array_at(hj, "maps", where + ".homs")) {
                gpairs::GeneratorMap g;
                g.generator = parse_word(action->group.alphabet(),
                                         str_at(gj, "generator", where + ".homs"), where);
                g.constants = action->base.aut(
                    gj.contains("constants") ? gj["constants"].get<long>() : 1);
                g.images = parse_polys(t.stages[k + 1].ring(),
                                       string_list_at(gj, "images", where + ".homs"), where);
                h.maps.push_back(std::move(g));
            }
            t.homs.push_back(std::move(h));
            ++k;
        }
    }
    return t;
}

Json write_kernel(const gpairs::KernelPresentation& k) {
    Json j;
    j["schema"] = "gtcf.kernel/1";
    j["field"] = write_base_field(k.ring->field());
    j["vars"] = k.ring->vars();
    j["relations"] = render_polys(k.relations);
    j["point"] = render_polys(k.point);
    Json images = Json::array();
    for (const auto& tuple : k.images)
        images.push_back(render_polys(tuple));
    j["images"] = std::move(images);
    return j;
}

gpairs::KernelPresentation read_kernel(const Json& j, const BaseField& fallback) {
    const std::string where = "kernel spec";
    check_schema(j, "gtcf.kernel/1", where);
    BaseField base = j.contains("field") ? read_base_field(j["field"], fallback) : fallback;
    auto ring = PolyRing::make(std::move(base), string_list_at(j, "vars", where));
    gpairs::KernelPresentation k;
    k.ring = ring;
    if (j.contains("relations"))
        k.relations = parse_polys(ring, string_list_at(j, "relations", where), where);
    k.point = parse_polys(ring, string_list_at(j, "point", where), where);
    for (const auto& tuple : array_at(j, "images", where))
        k.images.push_back(parse_polys(ring, string_list(tuple, where + ".images"), where));
    return k;
}

Json write_kernel_pair(const gpairs::KernelPairResult& r) {
    Json j;
    j["schema"] = "gtcf.kernel-pair/1";
    j["v"] = write_variety(r.v);
    j["w"] = write_variety(r.w);
    j["report"] = write_pair_report(r.report);
    return j;
}

// --- axiom emitter ---------------------------------------------------------

Json write_axiom_scheme(const axioms::AxiomScheme& s) {
    Json j;
    j["schema"] = "gtcf.axiom-scheme/1";
    j["group"] = s.group;
    j["kind"] = s.kind;
    j["pair"] = s.pair;
    j["rho"] = s.rho;
    j["matrix"] = s.matrix;
    Json classes = Json::array();
    for (size_t c = 0; c < s.classes.size(); ++c) {
        Json cls;
        cls["product"] = s.reps[c];
        Json pos = Json::array();
        for (const auto& [i, k] : s.classes[c])
            pos.push_back(Json::array({i, k}));
        cls["positions"] = std::move(pos);
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    Json conds = Json::array();
    for (const auto& d : s.diagonal_conditions) {
        Json dj;
        dj["relation"] = d.relation;
        dj["product"] = d.product;
        dj["text"] = d.text;
        conds.push_back(std::move(dj));
    }
    j["diagonal_conditions"] = std::move(conds);
    j["notation"] = s.notation;
    j["pair_conditions"] = s.pair_conditions;
    j["template"] = s.template_line;
    j["sentence"] = s.sentence;
    j["citation"] = s.citation;
    j["text"] = axioms::render_text(s);
    return j;
}

axioms::AxiomScheme read_axiom_scheme(const Json& j) {
    const std::string where = "axiom scheme";
    check_schema(j, "gtcf.axiom-scheme/1", where);
    axioms::AxiomScheme s;
    s.group = str_at(j, "group", where);
    s.kind = str_at(j, "kind", where);
    s.pair = str_at(j, "pair", where);
    s.rho = string_list_at(j, "rho", where);
    for (const auto& row : array_at(j, "matrix", where))
        s.matrix.push_back(string_list(row, where + ".matrix"));
    for (const auto& cls : array_at(j, "classes", where)) {
        s.reps.push_back(str_at(cls, "product", where + ".classes"));
        std::vector<std::pair<size_t, size_t>> positions;
        for (const auto& p : array_at(cls, "positions", where + ".classes")) {
            if (!p.is_array() || p.size() != 2)
                bad(where, "positions must be [i, j] pairs");
            positions.emplace_back(p[0].get<size_t>(), p[1].get<size_t>());
        }
        s.classes.push_back(std::move(positions));
    }
    for (const auto& dj : array_at(j, "diagonal_conditions", where)) {
        axioms::DiagonalCondition d;
        const Json& rel = array_at(dj, "relation", where + ".diagonal_conditions");
        if (rel.size() != 4)
            bad(where, "diagonal relations are [i, j, k, l] quadruples");
        for (size_t t = 0; t < 4; ++t)
            d.relation[t] = rel[t].get<size_t>();
        d.product = str_at(dj, "product", where);
        d.text = str_at(dj, "text", where);
        s.diagonal_conditions.push_back(std::move(d));
    }
    s.notation = string_list_at(j, "notation", where);
    s.pair_conditions = string_list_at(j, "pair_conditions", where);
    s.template_line = str_at(j, "template", where);
    s.sentence = str_at(j, "sentence", where);
    s.citation = str_at(j, "citation", where);
    return s;
}

Json write_axiom_instance(const axioms::AxiomInstance& a) {
    Json j;
    j["schema"] = "gtcf.axiom-instance/1";
    j["group"] = a.group;
    j["kind"] = a.kind;
    j["report"] = write_pair_report(a.report);
    j["sentence"] = a.sentence;
    j["inlined"] = a.inlined;
    j["text"] = a.text;
    return j;
}

axioms::AxiomInstance read_axiom_instance(const Json& j) {
    const std::string where = "axiom instance";
    check_schema(j, "gtcf.axiom-instance/1", where);
    axioms::AxiomInstance a;
    a.group = str_at(j, "group", where);
    a.kind = str_at(j, "kind", where);
    a.report = read_pair_report(need(j, "report", where));
    a.sentence = str_at(j, "sentence", where);
    a.inlined = str_at(j, "inlined", where);
    a.text = str_at(j, "text", where);
    return a;
}

// --- difference-identity verification --------------------------------------

Json write_replay_report(const diffcheck::ReplayReport& r) {
    Json j;
    j["schema"] = "gtcf.replay-report/1";
    j["scenario"] = r.scenario;
    j["verdict"] = r.verdict;
    Json items = Json::array();
    for (const auto& it : r.items) {
        Json ij;
        ij["name"] = it.name;
        ij["pass"] = it.pass;
        ij["detail"] = it.detail;
        items.push_back(std::move(ij));
    }
    j["items"] = std::move(items);
    return j;
}

diffcheck::ReplayReport read_replay_report(const Json& j) {
    const std::string where = "replay report";
    check_schema(j, "gtcf.replay-report/1", where);
    diffcheck::ReplayReport r;
    r.scenario = str_at(j, "scenario", where);
    r.verdict = need(j, "verdict", where).get<bool>();
    for (const auto& ij : array_at(j, "items", where)) {
        diffcheck::ReplayItem it;
        it.name = str_at(ij, "name", where + ".items");
        it.pass = need(ij, "pass", where + ".items").get<bool>();
        it.detail = ij.value("detail", std::string{});
        r.items.push_back(std::move(it));
    }
    return r;
}

diffcheck::PresentedRing read_ring(const Json& j, const BaseField& fallback,
                                   const Limits& limits) {
    const std::string where = "ring spec";
    check_schema(j, "gtcf.ring/1", where);
    BaseField base = j.contains("field") ? read_base_field(j["field"], fallback) : fallback;
    auto vars = string_list_at(j, "vars", where);
    auto ring = PolyRing::make(std::move(base), vars);
    std::vector<Poly> relations;
    if (j.contains("relations"))
        relations = parse_polys(ring, string_list_at(j, "relations", where), where);
    auto pres = diffcheck::presented_ring(ring, std::move(relations), limits);
    if (j.contains("inverses")) {
        for (const auto& pj : array_at(j, "inverses", where)) {
            if (!pj.is_array() || pj.size() != 2 || !pj[0].is_string() || !pj[1].is_string())
                bad(where, "\"inverses\" entries are [\"var\", \"companion\"] pairs");
            const auto var = pj[0].get<std::string>();
            const auto inv = pj[1].get<std::string>();
            int vi = pres.ring->var_index(var);
            int ui = pres.ring->var_index(inv);
            if (vi < 0)
                bad(where, "unknown variable \"" + var + "\" in \"inverses\"");
            if (ui >= 0) {
                pres.inverses.emplace_back(static_cast<size_t>(vi), static_cast<size_t>(ui));
            } else {
                pres = diffcheck::with_inverse(pres, var, inv, limits);
            }
        }
    }
    return pres;
}

Json write_ring(const diffcheck::PresentedRing& r) {
    Json j;
    j["schema"] = "gtcf.ring/1";
    j["field"] = write_base_field(r.ring->field());
    j["vars"] = r.ring->vars();
    j["relations"] = render_polys(r.relations.gens());
    Json inverses = Json::array();
    for (const auto& [vi, ui] : r.inverses)
        inverses.push_back(Json::array({r.ring->vars()[vi], r.ring->vars()[ui]}));
    j["inverses"] = std::move(inverses);
    return j;
}

VerifyJob read_maps(const Json& j, const diffcheck::PresentedRing& r) {
    const std::string where = "maps spec";
    check_schema(j, "gtcf.maps/1", where);
    VerifyJob job;
    for (const auto& mj : array_at(j, "maps", where)) {
        const std::string mw = where + ".maps";
        diffcheck::EndoCandidate e;
        e.name = str_at(mj, "name", mw);
        e.constants = r.ring->field().aut(
            mj.contains("constants") ? mj["constants"].get<long>() : 1);
        e.images.assign(r.ring->nvars(), Poly{});
        const Json& images = need(mj, "images", mw);
        if (!images.is_object())
            bad(mw, "\"images\" must map variables to polynomial strings");
        for (const auto& [var, text] : images.items()) {
            int vi = r.ring->var_index(var);
            if (vi < 0)
                bad(mw, "unknown variable \"" + var + "\" in images of " + e.name);
            if (!text.is_string())
                bad(mw, "\"images\" must map variables to polynomial strings");
            e.images[static_cast<size_t>(vi)] =
                parse_polys(r.ring, {text.get<std::string>()}, mw).front();
        }
        job.maps.push_back(std::move(e));
    }
    for (const auto& ij : array_at(j, "identities", where)) {
        const std::string iw = where + ".identities";
        VerifyIdentity id;
        id.lhs = string_list_at(ij, "lhs", iw);
        id.rhs = string_list_at(ij, "rhs", iw);
        for (const auto& side : {&id.lhs, &id.rhs})
            for (const auto& name : *side) {
                bool known = false;
                for (const auto& e : job.maps)
                    known = known || e.name == name;
                if (!known)
                    bad(iw, "identity references the unknown map \"" + name + "\"");
            }
        auto render_side = [](const std::vector<std::string>& side) {
            if (side.empty())
                return std::string("id");
            std::string out;
            for (size_t t = 0; t < side.size(); ++t)
                out += (t ? "*" : "") + side[t];
            return out;
        };
        id.name = ij.contains("name") ? str_at(ij, "name", iw)
                                      : render_side(id.lhs) + " = " + render_side(id.rhs);
        if (ij.contains("probes")) {
            id.probes = parse_polys(r.ring, string_list_at(ij, "probes", iw), iw);
        } else {
            for (size_t v = 0; v < r.ring->nvars(); ++v)
                id.probes.push_back(Poly::variable(r.ring, v));
        }
        job.identities.push_back(std::move(id));
    }
    return job;
}

Json write_maps(const VerifyJob& job, const diffcheck::PresentedRing& r) {
    Json j;
    j["schema"] = "gtcf.maps/1";
    Json maps = Json::array();
    for (const auto& e : job.maps) {
        Json mj;
        mj["name"] = e.name;
        if (e.constants.k != 1)
            mj["constants"] = e.constants.k;
        Json images;
        for (size_t v = 0; v < e.images.size(); ++v)
            if (e.images[v].ring())
                images[r.ring->vars()[v]] = e.images[v].to_string();
        mj["images"] = images.is_null() ? Json::object() : std::move(images);
        maps.push_back(std::move(mj));
    }
    j["maps"] = std::move(maps);
    Json identities = Json::array();
    for (const auto& id : job.identities) {
        Json ij;
        ij["name"] = id.name;
        ij["lhs"] = id.lhs;
        ij["rhs"] = id.rhs;
        ij["probes"] = render_polys(id.probes);
        identities.push_back(std::move(ij));
    }
    j["identities"] = std::move(identities);
    return j;
}

diffcheck::ReplayReport run_verify_job(const diffcheck::PresentedRing& r, const VerifyJob& job,
                                       const Limits& limits) {
    diffcheck::ReplayReport rep;
    rep.scenario = "verify";
    rep.verdict = true;
    auto record = [&](const std::string& name, const diffcheck::CheckOutcome& out) {
        diffcheck::ReplayItem item;
        item.name = name;
        item.pass = out.pass;
        item.detail = out.pass ? "checked " + std::to_string(out.checked) + ", skipped " +
                                     std::to_string(out.skipped)
                               : out.witness;
        rep.verdict = rep.verdict && out.pass;
        rep.items.push_back(std::move(item));
    };
    for (const auto& e : job.maps)
        record("hom: " + e.name, diffcheck::verify_hom(r, e, limits));
    for (const auto& id : job.identities)
        record(id.name, diffcheck::verify_relation(r, job.maps, id.lhs, id.rhs, id.probes,
                                                   limits));
    return rep;
}

} // namespace gtcf::jsonio
