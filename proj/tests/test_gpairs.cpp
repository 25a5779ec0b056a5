#include "gtcf/bass_serre.hpp"
#include "gtcf/errors.hpp"
#include "gtcf/gpairs.hpp"
#include "gtcf/variety.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace gtcf;
using namespace gtcf::groups;
using namespace gtcf::gpairs;
using gtcf::algebra::BaseField;
using gtcf::algebra::Poly;
using gtcf::bass_serre::build_graph_of_groups;
using gtcf::bass_serre::fundamental_marked_group;
using gtcf::bass_serre::GogEdge;
using gtcf::variety::Block;
using gtcf::variety::BlockVariety;
using gtcf::variety::GFieldPtr;
using gtcf::variety::make_gfield;
using gtcf::variety::same_variety;

namespace {

FiniteGroup c2() { return FiniteGroup::cyclic(2, {"1", "sigma"}); }

FiniteGroup sign_c2() { return FiniteGroup::cyclic(2, {"1", "g"}); }

FiniteGroup klein4() {
    return FiniteGroup::validate({"1", "sigma", "tau", "gamma"},
                                 {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

FiniteGroup trivial_group() { return FiniteGroup::validate({"1"}, {{0}}); }

GFieldPtr plain(MarkedGroup m) { return make_gfield(BaseField::rational(), std::move(m), {}); }

Word wd(const GFieldPtr& gf, const std::string& s) { return gf->group.alphabet().parse(s); }

// A^n with one identity-labeled block.
BlockVariety base_space(const GFieldPtr& gf, std::vector<std::string> vars,
                        std::vector<std::string> gens = {}) {
    return BlockVariety::parse(gf, {Block{Word{}, std::move(vars)}}, gens);
}

// Blocks x<i+1>[_<k+1>] over the full marking tuple.
BlockVariety rho_variety(const GFieldPtr& gf, size_t width,
                         const std::vector<std::string>& gens) {
    std::vector<Block> blocks;
    const auto& m = gf->group;
    for (size_t i = 0; i < m.arity(); ++i) {
        Block b{m.rho[i], {}};
        for (size_t k = 0; k < width; ++k) {
            std::string nm = "x" + std::to_string(i + 1);
            if (width > 1)
                nm += "_" + std::to_string(k + 1);
            b.vars.push_back(std::move(nm));
        }
        blocks.push_back(std::move(b));
    }
    return BlockVariety::parse(gf, std::move(blocks), gens);
}

// C2 * C2 with generators sigma (x -> -x) and tau (x -> -x + 1).
MarkedGroup infinite_dihedral_amalgam() {
    auto c2a = FiniteGroup::cyclic(2, {"1", "sigma"});
    auto c2b = FiniteGroup::cyclic(2, {"1", "tau"});
    auto g = build_graph_of_groups({"left", "right"}, {c2a, c2b},
                                   {GogEdge{0, 1, trivial_group(), {0}, {0}, true, ""}});
    return fundamental_marked_group(g);
}

// (C2 x C2) *_alpha with alpha: <sigma> -> <tau> and stable letter t.
MarkedGroup klein_hnn() {
    auto g = build_graph_of_groups(
        {"v"}, {klein4()}, {GogEdge{0, 0, FiniteGroup::cyclic(2, {"1", "s"}), {0, 1}, {0, 2},
                                    false, ""}});
    return fundamental_marked_group(g);
}

// C4 *_{C2} C4 with the squares identified.
MarkedGroup two_c4_amalgam() {
    auto c4a = FiniteGroup::cyclic(4, {"1", "alpha", "beta", "gamma"});
    auto c4b = FiniteGroup::cyclic(4, {"1", "alpha'", "beta'", "gamma'"});
    auto g = build_graph_of_groups(
        {"left", "right"}, {c4a, c4b},
        {GogEdge{0, 1, FiniteGroup::cyclic(2, {"1", "s"}), {0, 2}, {0, 2}, true, ""}});
    return fundamental_marked_group(g);
}

// The line x -> a with sigma translating and tau reflecting, blocks in
// marking order (sigma^-1, 1, sigma, sigma^-1 tau, tau, sigma tau).
const std::vector<std::string> dihedral_line_gens = {
    "x1 - x2 + 1", "x3 - x2 - 1", "x4 + x2 - 1", "x5 + x2", "x6 + x2 + 1"};

// Same generators with the reflected outer blocks traded, which breaks the
// reflection conditions.
const std::vector<std::string> dihedral_line_broken = {
    "x1 - x2 + 1", "x3 - x2 - 1", "x4 + x2 + 1", "x5 + x2", "x6 + x2 - 1"};

// The plane (u, v) with sigma = (-u, v), tau = (u, -v), gamma = (-u, -v) and
// the stable letter t the coordinate swap (v, u); sigma t = t tau holds.
const std::vector<std::string> klein_swap_gens = {
    "x2_1 + x1_1", "x2_2 - x1_2", "x3_1 - x1_1", "x3_2 + x1_2", "x4_1 + x1_1", "x4_2 + x1_2",
    "x5_1 - x1_2", "x5_2 - x1_1", "x6_1 + x1_2", "x6_2 - x1_1", "x7_1 - x1_2", "x7_2 + x1_1",
    "x8_1 + x1_2", "x8_2 + x1_1"};

bool all_pass(const GPairReport& r) {
    for (const auto& c : r.checks)
        if (!c.pass)
            return false;
    return !r.checks.empty();
}

bool family_verdict(const GPairReport& r, const std::string& prefix) {
    bool all = true;
    bool found = false;
    for (const auto& c : r.checks)
        if (c.name.rfind(prefix, 0) == 0) {
            found = true;
            all = all && c.pass;
        }
    REQUIRE(found);
    return all;
}

} // namespace

TEST_CASE("the graph of the squaring map is a pair over the integers") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - x1^2"});

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);
    CHECK(rep.kind == "free");
    CHECK(rep.note == "irreducibility assumed, not verified");
    CHECK(rep.checks.size() == 3);
    CHECK(rep.passed("containment"));
    CHECK(rep.passed("dominant[1]"));
    CHECK(rep.passed("dominant[sigma]"));

    auto flat = rho_variety(gf, 1, {"x2"});
    auto bad = check_g_pair(v, flat, gf->group);
    CHECK_FALSE(bad.verdict);
    CHECK(bad.passed("containment"));
    CHECK(bad.passed("dominant[1]"));
    const auto* failing = bad.find("dominant[sigma]");
    REQUIRE(failing != nullptr);
    CHECK_FALSE(failing->pass);
    CHECK(failing->witness.find("x2") != std::string::npos);
}

TEST_CASE("pair checking validates the ambient block structure") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});

    auto missing = BlockVariety::parse(gf, {Block{Word{}, {"x1"}}}, {});
    CHECK_THROWS_WITH_AS(check_g_pair(v, missing, gf->group),
                         doctest::Contains("block mismatch"), ValidationError);

    auto extra = BlockVariety::parse(
        gf, {Block{Word{}, {"x1"}}, Block{wd(gf, "sigma"), {"x2"}},
             Block{wd(gf, "sigma^2"), {"x3"}}},
        {});
    CHECK_THROWS_WITH_AS(check_g_pair(v, extra, gf->group),
                         doctest::Contains("unexpected block"), ValidationError);

    auto wide = BlockVariety::parse(
        gf, {Block{Word{}, {"x1"}}, Block{wd(gf, "sigma"), {"x2", "x3"}}}, {});
    CHECK_THROWS_WITH_AS(check_g_pair(v, wide, gf->group), doctest::Contains("width"),
                         ValidationError);

    auto other = plain(marked_free_group(1));
    auto w2 = rho_variety(other, 1, {});
    CHECK_THROWS_WITH_AS(check_g_pair(v, w2, gf->group), doctest::Contains("share one action"),
                         ValidationError);

    auto w = rho_variety(gf, 1, {});
    CHECK_THROWS_WITH_AS(check_g_pair(v, w, marked_free_group(2)),
                         doctest::Contains("does not match the action"), ValidationError);

    auto gf2 = plain(marked_finite_group(c2()));
    MarkedGroup hollow = gf2->group;
    hollow.finite.reset();
    auto v2 = base_space(gf2, {"x"});
    auto w3 = rho_variety(gf2, 1, {});
    CHECK_THROWS_WITH_AS(check_g_pair(v2, w3, hollow), doctest::Contains("unsupported"),
                         ValidationError);
}

TEST_CASE("the reciprocal locus is a pair for the order-two group") {
    auto gf = plain(marked_finite_group(c2()));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x1*x2 - 1"});

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);
    CHECK(rep.kind == "finite");
    CHECK(rep.checks.size() == 4);
    CHECK(rep.passed("iterativity[sigma]"));

    auto shifted = rho_variety(gf, 1, {"x2 - x1 - 1"});
    auto bad = check_g_pair(v, shifted, gf->group);
    CHECK_FALSE(bad.verdict);
    CHECK(bad.passed("containment"));
    CHECK(bad.passed("dominant[1]"));
    CHECK(bad.passed("dominant[sigma]"));
    const auto* it = bad.find("iterativity[sigma]");
    REQUIRE(it != nullptr);
    CHECK_FALSE(it->pass);
    CHECK(it->witness.find("x1 - x2 - 1") != std::string::npos);
}

TEST_CASE("a conjugation pair over the eighth cyclotomic field") {
    auto gf = make_gfield(BaseField::cyclotomic(8), marked_finite_group(c2()), {{"sigma", 7}});
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - zeta*x1"});

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);

    auto wp = prolong(v, w, gf->group);
    CHECK(same_variety(wp, w));
}

TEST_CASE("full ambient spaces are pairs for every marking kind") {
    std::vector<GFieldPtr> fields = {
        plain(marked_free_group(2)),
        plain(marked_finite_group(klein4())),
        plain(infinite_dihedral_amalgam()),
        plain(two_c4_amalgam()),
        plain(klein_hnn()),
        plain(marked_product_group(1, sign_c2())),
        plain(marked_dihedral_group()),
    };
    for (const auto& gf : fields) {
        CAPTURE(kind_name(gf->group.kind));
        auto v = base_space(gf, {"x"});
        auto w = rho_variety(gf, 1, {});
        auto rep = check_g_pair(v, w, gf->group);
        CHECK(rep.verdict);
        CHECK(all_pass(rep));
    }
}

TEST_CASE("the translated line realizes a pair for the infinite dihedral marking") {
    auto gf = plain(marked_dihedral_group());
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, dihedral_line_gens);

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);
    CHECK(rep.kind == "product-dinfty");
    CHECK(all_pass(rep));
    CHECK(rep.passed("containment"));
    CHECK(rep.passed("dominant[1]"));
    CHECK(rep.passed("C2.iterativity[tau]"));
    CHECK(rep.passed("Z.containment"));
    CHECK(rep.passed("Z.dominant[sigma^-1]"));
    CHECK(rep.passed("Z.dominant[sigma]"));

    auto traded = rho_variety(gf, 1, dihedral_line_broken);
    auto bad = check_g_pair(v, traded, gf->group);
    CHECK_FALSE(bad.verdict);
    const auto* it = bad.find("C2.iterativity[tau]");
    REQUIRE(it != nullptr);
    CHECK_FALSE(it->pass);
    CHECK_FALSE(it->witness.empty());
}

TEST_CASE("the amalgam route certifies the same dihedral action") {
    auto gf = plain(infinite_dihedral_amalgam());
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 + x1", "x3 + x1 - 1"});

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);
    CHECK(rep.kind == "tree-amalgam");
    CHECK(rep.passed("B[left].iterativity[sigma]"));
    CHECK(rep.passed("B[right].iterativity[tau]"));

    auto drifting = rho_variety(gf, 1, {"x2 + x1", "x3 - x1 - 1"});
    auto bad = check_g_pair(v, drifting, gf->group);
    CHECK_FALSE(bad.verdict);
    CHECK(bad.passed("B[left].iterativity[sigma]"));
    CHECK_FALSE(bad.passed("B[right].iterativity[tau]"));
}

TEST_CASE("the coordinate swap model is a pair for the klein HNN extension") {
    auto gf = plain(klein_hnn());
    auto v = base_space(gf, {"u", "v"});
    auto w = rho_variety(gf, 2, klein_swap_gens);

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);
    CHECK(rep.kind == "hnn");
    CHECK(rep.passed("shift[t][v]"));
    CHECK(rep.passed("B[v].iterativity[sigma]"));
    CHECK(rep.passed("B[v].iterativity[tau]"));
    CHECK(rep.passed("B[v].iterativity[gamma]"));

    auto frozen = klein_swap_gens;
    frozen[6] = "x5_1 - x1_1";
    frozen[7] = "x5_2 - x1_2";
    auto bad = check_g_pair(v, rho_variety(gf, 2, frozen), gf->group);
    CHECK_FALSE(bad.verdict);
    CHECK_FALSE(bad.passed("shift[t][v]"));
    CHECK(bad.passed("B[v].containment"));
    CHECK(bad.passed("B[v].iterativity[sigma]"));
}

TEST_CASE("a commuting translation gives a pair for the product marking") {
    auto gf = plain(marked_product_group(1, sign_c2()));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - x1 - 1", "x3 - x1", "x4 - x1 - 1"});

    auto rep = check_g_pair(v, w, gf->group);
    CHECK(rep.verdict);
    CHECK(rep.kind == "product");
    CHECK(rep.passed("F.containment"));
    CHECK(rep.passed("F.dominant[sigma]"));
    CHECK(rep.passed("G0.iterativity[g]"));

    auto skew = rho_variety(gf, 1, {"x2 - x1 - 1", "x3 + x1", "x4 + x1 + 1"});
    auto bad = check_g_pair(v, skew, gf->group);
    CHECK_FALSE(bad.verdict);
    CHECK_FALSE(bad.passed("G0.iterativity[g]"));
    CHECK(bad.passed("F.containment"));
    CHECK(bad.passed("F.dominant[sigma]"));
}

TEST_CASE("prolongation contracts the diagonal classes of the free marking") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - x1^2"});

    auto wp = prolong(v, w, gf->group);
    REQUIRE(wp.blocks().size() == 3);
    CHECK(wp.label_string(0) == "1");
    CHECK(wp.label_string(1) == "sigma");
    CHECK(wp.label_string(2) == "sigma^2");
    auto expected = BlockVariety::parse(
        gf,
        {Block{Word{}, {"w1"}}, Block{wd(gf, "sigma"), {"w2"}},
         Block{wd(gf, "sigma^2"), {"w3"}}},
        {"w2 - w1^2", "w3 - w2^2"});
    CHECK(same_variety(wp, expected));
}

TEST_CASE("prolongation agrees with the twisted fiber product over the integers") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});
    const std::vector<std::string> graphs = {"x2 - x1^2", "x2 - x1^2 - 1",
                                             "x2 - x1^3 + 2*x1 - 1", "x2 - 2*x1 - 3",
                                             "x1*x2 - 1"};
    for (const auto& g : graphs) {
        CAPTURE(g);
        auto w = rho_variety(gf, 1, {g});
        auto wp = prolong(v, w, gf->group);
        auto shifted =
            variety::rename_vars(variety::twist(w, wd(gf, "sigma")), {"u1", "u2"});
        auto fp = fiber_product(w, shifted, wd(gf, "sigma"));
        CHECK(same_variety(wp, fp));
    }
}

TEST_CASE("prolongation of a stable finite pair reproduces the variety") {
    auto gf = plain(marked_finite_group(c2()));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x1*x2 - 1"});
    auto wp = prolong(v, w, gf->group);
    REQUIRE(wp.blocks().size() == 2);
    CHECK(same_variety(wp, w));
}

TEST_CASE("prolongation class counts match the product structure") {
    auto dih = plain(marked_dihedral_group());
    auto wd10 = prolong(base_space(dih, {"x"}), rho_variety(dih, 1, {}), dih->group);
    CHECK(wd10.blocks().size() == 10);
    CHECK(wd10.ideal().is_zero_ideal());

    auto hnn = plain(klein_hnn());
    auto wk = prolong(base_space(hnn, {"u", "v"}), rho_variety(hnn, 2, {}), hnn->group);
    CHECK(wk.blocks().size() == 20);
    CHECK(wk.ideal().is_zero_ideal());
    for (const auto& b : wk.blocks())
        CHECK(b.width() == 2);
}

TEST_CASE("every corpus pair stays a pair after one prolongation step") {
    struct Entry {
        GFieldPtr gf;
        BlockVariety v, w;
    };
    std::vector<Entry> corpus;
    {
        auto gf = plain(marked_free_group(1));
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, {"x2 - x1^2"})});
    }
    {
        auto gf = plain(marked_finite_group(c2()));
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, {"x1*x2 - 1"})});
    }
    {
        auto gf =
            make_gfield(BaseField::cyclotomic(8), marked_finite_group(c2()), {{"sigma", 7}});
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, {"x2 - zeta*x1"})});
    }
    {
        auto gf = plain(infinite_dihedral_amalgam());
        corpus.push_back(
            {gf, base_space(gf, {"x"}), rho_variety(gf, 1, {"x2 + x1", "x3 + x1 - 1"})});
    }
    {
        auto gf = plain(klein_hnn());
        corpus.push_back({gf, base_space(gf, {"u", "v"}), rho_variety(gf, 2, klein_swap_gens)});
    }
    {
        auto gf = plain(marked_product_group(1, sign_c2()));
        corpus.push_back({gf, base_space(gf, {"x"}),
                          rho_variety(gf, 1, {"x2 - x1 - 1", "x3 - x1", "x4 - x1 - 1"})});
    }
    {
        auto gf = plain(marked_dihedral_group());
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, dihedral_line_gens)});
    }
    for (const auto& e : corpus) {
        CAPTURE(kind_name(e.gf->group.kind));
        REQUIRE(check_g_pair(e.v, e.w, e.gf->group).verdict);
        auto wp = prolong(e.v, e.w, e.gf->group);
        auto rep = check_g_pair(e.w, wp, e.gf->group);
        CHECK(rep.verdict);
    }
}

TEST_CASE("the four finite pair formulations agree on good and broken input") {
    auto gf = plain(marked_finite_group(c2()));
    auto v = base_space(gf, {"x"});
    GPairOptions opts;
    opts.debug_equivalences = true;

    std::vector<std::string> samples;
    for (const std::string c : {"1", "2", "3"}) {
        samples.push_back("x2 + x1 - " + c);  // involution x -> c - x
        samples.push_back("x1*x2 - " + c);    // involution x -> c / x
        samples.push_back("x2 - x1 - " + c);  // broken shift
    }
    samples.push_back("x2 - x1^2"); // broken square

    for (const auto& s : samples) {
        CAPTURE(s);
        auto rep = check_g_pair(v, rho_variety(gf, 1, {s}), gf->group, opts);
        REQUIRE(rep.passed("containment"));
        REQUIRE(rep.passed("dominant[1]"));
        REQUIRE(rep.passed("dominant[sigma]"));
        const bool f1 = family_verdict(rep, "iterativity[");
        const bool f2 = family_verdict(rep, "lambda-inside[");
        const bool f3 = rep.passed("lambda-equals-prolongation");
        const bool f4 = family_verdict(rep, "prolongation-dominates[");
        CHECK(f1 == f2);
        CHECK(f2 == f3);
        CHECK(f3 == f4);
        CHECK(rep.verdict == f1);
    }
}

TEST_CASE("position prolongations decide the identification of marking pairs") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - x1^2"});

    auto pp = prolong_positions(v, w, gf->group);
    CHECK(pp.m == 2);
    CHECK(pp.v_width == 1);
    CHECK(word_problem_diagonal_check(pp, 0, 1, 1, 0));
    CHECK(word_problem_diagonal_check(pp, 1, 0, 0, 1));
    CHECK(word_problem_diagonal_check(pp, 1, 1, 1, 1));
    CHECK_FALSE(word_problem_diagonal_check(pp, 0, 0, 1, 1));
    CHECK_THROWS_WITH_AS(word_problem_diagonal_check(pp, 0, 0, 2, 0),
                         doctest::Contains("out of range"), ValidationError);
}

TEST_CASE("position prolongations identify exactly the marking relations") {
    std::vector<GFieldPtr> fields = {plain(marked_finite_group(c2())),
                                     plain(marked_finite_group(klein4())),
                                     plain(marked_dihedral_group())};
    for (const auto& gf : fields) {
        CAPTURE(kind_name(gf->group.kind));
        auto v = base_space(gf, {"x"});
        auto w = rho_variety(gf, 1, {});
        auto pp = prolong_positions(v, w, gf->group);
        auto dc = diagonal_classes(gf->group);
        for (const auto& cls : dc.classes) {
            const auto [i0, j0] = cls.front();
            for (const auto& [i, j] : cls)
                CHECK(word_problem_diagonal_check(pp, i0, j0, i, j));
        }
        // Distinct classes stay distinct on the full ambient space.
        const auto [a, b] = dc.classes[0].front();
        const auto [c, d] = dc.classes[1].front();
        CHECK_FALSE(word_problem_diagonal_check(pp, a, b, c, d));
    }
}

TEST_CASE("a hand-built prolongation without identifications fails the diagonal check") {
    auto gf = plain(marked_free_group(1));
    auto ring = algebra::PolyRing::make(BaseField::rational(),
                                        {"p1_1", "p1_2", "p2_1", "p2_2"});
    PositionProlongation loose{ring, algebra::Ideal(ring, {}), 2, 1};
    CHECK_FALSE(word_problem_diagonal_check(loose, 0, 1, 1, 0));
}

TEST_CASE("towers iterate the prolongation with verified stages") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - x1^2"});

    auto t = tower(v, w, gf->group, 3);
    REQUIRE(t.stages.size() == 5);
    REQUIRE(t.reports.size() == 4);
    REQUIRE(t.homs.size() == 4);
    for (const auto& r : t.reports)
        CHECK(r.verdict);
    for (size_t k = 1; k < t.stages.size(); ++k) {
        const auto& stage = t.stages[k];
        REQUIRE(stage.blocks().size() == k + 1);
        std::vector<Block> blocks;
        std::vector<std::string> gens;
        for (size_t i = 0; i <= k; ++i) {
            const std::string label = i == 0 ? "1" : "sigma^" + std::to_string(i);
            blocks.push_back(Block{wd(gf, label), {"w" + std::to_string(i + 1)}});
            if (i > 0)
                gens.push_back("w" + std::to_string(i + 1) + " - w" + std::to_string(i) +
                               "^2");
        }
        CHECK(same_variety(stage, BlockVariety::parse(gf, blocks, gens)));
    }
    CHECK(t.homs[0].maps[1].generator == gf->group.rho[1]);
    CHECK(t.homs[0].maps[1].constants == gf->act(gf->group.rho[1]));
    REQUIRE(t.homs[0].maps[1].images.size() == 1);
    CHECK(t.homs[0].maps[1].images[0] == Poly::variable(w.ring(), 1));

    auto flat = tower(v, w, gf->group, 0);
    CHECK(flat.stages.size() == 2);
    CHECK(flat.reports.size() == 1);
    CHECK(same_variety(flat.stages[1], w));
}

TEST_CASE("towers of stable finite pairs stabilize immediately") {
    auto gf = plain(marked_finite_group(c2()));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x1*x2 - 1"});
    auto t = tower(v, w, gf->group, 5);
    REQUIRE(t.stages.size() == 7);
    for (size_t k = 1; k < t.stages.size(); ++k)
        CHECK(same_variety(t.stages[k], w));
}

TEST_CASE("towers refuse to start from a failing pair") {
    auto gf = plain(marked_finite_group(c2()));
    auto v = base_space(gf, {"x"});
    auto broken = rho_variety(gf, 1, {"x2 - x1 - 1"});
    try {
        tower(v, broken, gf->group, 2);
        FAIL("expected a stage check failure");
    } catch (const StageCheckFailed& e) {
        CHECK(e.stage == 0);
        CHECK_FALSE(e.report.verdict);
        CHECK_FALSE(e.report.passed("iterativity[sigma]"));
        CHECK(std::string(e.what()).find("stage 0") != std::string::npos);
    }
}

TEST_CASE("kernel data reads the coordinate maps off a verified pair") {
    auto gf = plain(marked_free_group(1));
    auto v = base_space(gf, {"x"});
    auto w = rho_variety(gf, 1, {"x2 - x1^2"});

    auto hom = kernel_from_pair(v, w, gf->group);
    REQUIRE(hom.maps.size() == 2);
    CHECK(hom.maps[0].generator.empty());
    CHECK(hom.maps[0].images[0] == Poly::variable(w.ring(), 0));
    CHECK(hom.maps[1].images[0] == Poly::variable(w.ring(), 1));
    CHECK(hom.maps[1].constants == gf->act(gf->group.rho[1]));

    auto broken = rho_variety(gf, 1, {"x2"});
    try {
        kernel_from_pair(v, broken, gf->group);
        FAIL("expected a pair check failure");
    } catch (const PairCheckFailed& e) {
        CHECK_FALSE(e.report.verdict);
        CHECK(std::string(e.what()).find("pair check failed") != std::string::npos);
    }
}

TEST_CASE("presented kernels produce the pair of loci") {
    auto gf = plain(marked_free_group(1));
    auto ring = algebra::PolyRing::make(BaseField::rational(), {"s"});
    const Poly s = Poly::variable(ring, 0);

    KernelPresentation pres{ring, {}, {s}, {{s}, {s * s}}};
    auto out = pair_from_kernel(gf, gf->group, pres);
    CHECK(out.report.verdict);
    CHECK(same_variety(out.v, base_space(gf, {"x"})));
    CHECK(same_variety(out.w, rho_variety(gf, 1, {"x2 - x1^2"})));

    const Poly one = Poly::constant(ring, algebra::Rat(1));
    KernelPresentation fixed{ring, {}, {one}, {{one}, {one}}};
    auto fixed_out = pair_from_kernel(gf, gf->group, fixed);
    CHECK(fixed_out.report.verdict);
    REQUIRE(fixed_out.v.ideal().gens().size() == 1);
    CHECK(fixed_out.v.ideal().lex_basis()[0].to_string() == "x1 - 1");

    KernelPresentation drifted{ring, {}, {s}, {{s + one}, {s}}};
    CHECK_THROWS_WITH_AS(pair_from_kernel(gf, gf->group, drifted),
                         doctest::Contains("identity position"), ValidationError);

    KernelPresentation collapsed{ring, {s, s - one}, {s}, {{s}, {s}}};
    CHECK_THROWS_WITH_AS(pair_from_kernel(gf, gf->group, collapsed),
                         doctest::Contains("inconsistent presentation"), ValidationError);

    KernelPresentation lopsided{ring, {}, {s}, {{s}}};
    CHECK_THROWS_WITH_AS(pair_from_kernel(gf, gf->group, lopsided),
                         doctest::Contains("one image tuple"), ValidationError);

    KernelPresentation ragged{ring, {}, {s}, {{s}, {s, s}}};
    CHECK_THROWS_WITH_AS(pair_from_kernel(gf, gf->group, ragged),
                         doctest::Contains("match the point"), ValidationError);
}

TEST_CASE("kernel data round-trips through the presentation reading") {
    struct Entry {
        GFieldPtr gf;
        BlockVariety v, w;
    };
    std::vector<Entry> corpus;
    {
        auto gf = plain(marked_free_group(1));
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, {"x2 - x1^2"})});
    }
    {
        auto gf = plain(marked_finite_group(c2()));
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, {"x1*x2 - 1"})});
    }
    {
        auto gf = plain(marked_dihedral_group());
        corpus.push_back({gf, base_space(gf, {"x"}), rho_variety(gf, 1, dihedral_line_gens)});
    }
    {
        auto gf = plain(klein_hnn());
        corpus.push_back({gf, base_space(gf, {"u", "v"}), rho_variety(gf, 2, klein_swap_gens)});
    }
    for (const auto& e : corpus) {
        CAPTURE(kind_name(e.gf->group.kind));
        auto hom = kernel_from_pair(e.v, e.w, e.gf->group);
        KernelPresentation pres;
        pres.ring = e.w.ring();
        pres.relations = e.w.ideal().gens();
        pres.point = hom.maps[e.gf->group.identity_index].images;
        for (const auto& g : hom.maps)
            pres.images.push_back(g.images);
        auto out = pair_from_kernel(e.gf, e.gf->group, pres);
        CHECK(out.report.verdict);
        CHECK(same_variety(out.v, e.v));
        CHECK(same_variety(out.w, e.w));
    }
}
