#include "gtcf/diffcheck.hpp"
#include "gtcf/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

using namespace gtcf;
using namespace gtcf::diffcheck;
using gtcf::algebra::BaseField;
using gtcf::algebra::Poly;
using gtcf::algebra::PolyRing;
using gtcf::algebra::Rat;
using gtcf::algebra::RingPtr;

namespace {

// Q[x, x^-1] presented as Q[x, y] / (x*y - 1).
PresentedRing laurent_line() {
    auto ring = PolyRing::make(BaseField::rational(), {"x"});
    return with_inverse(presented_ring(ring, {}), "x", "y");
}

// Q(zeta_3)[y, x] / (y^3 - x).
PresentedRing cube_root_cover() {
    auto ring = PolyRing::make(BaseField::cyclotomic(3), {"y", "x"});
    Poly y = Poly::variable(ring, 0), x = Poly::variable(ring, 1);
    return presented_ring(ring, {y.pow(3) - x});
}

// The n = 3 sum construction on Q[x0, x1] with x2 = -(x0 + x1).
struct SumFixture {
    PresentedRing r;
    std::vector<EndoCandidate> table;
    Poly x0, x1;
};

SumFixture sum_construction() {
    auto ring = PolyRing::make(BaseField::rational(), {"x0", "x1"});
    Poly x0 = Poly::variable(ring, 0), x1 = Poly::variable(ring, 1);
    Poly last = -x0 - x1;
    auto id = ring->field().aut(1);
    EndoCandidate sig{"sigma'", {x1, last}, id};
    EndoCandidate sig_inv{"sigma'^-1", {last, x0}, id};
    EndoCandidate tau{"tau'", {-x0, -last}, id};
    return {presented_ring(ring, {}), {sig, sig_inv, tau}, x0, x1};
}

const ReplayItem& item_named(const ReplayReport& rep, const std::string& name) {
    for (const auto& it : rep.items)
        if (it.name == name) return it;
    FAIL("no item named ", name);
    return rep.items.front();
}

bool has_item(const ReplayReport& rep, const std::string& name) {
    return std::any_of(rep.items.begin(), rep.items.end(),
                       [&](const ReplayItem& it) { return it.name == name; });
}

size_t count_passing(const ReplayReport& rep, const std::string& needle) {
    size_t n = 0;
    for (const auto& it : rep.items)
        if (it.pass && it.name.find(needle) != std::string::npos) ++n;
    return n;
}

} // namespace

TEST_CASE("presented rings track localization companions") {
    auto r = laurent_line();
    CHECK(r.ring->nvars() == 2);
    CHECK(r.ring->vars()[1] == "y");
    REQUIRE(r.relations.gens().size() == 1);
    CHECK(r.relations.gens()[0].to_string() == "x*y - 1");
    REQUIRE(r.inverses.size() == 1);
    CHECK(r.inverses[0].first == 0);
    CHECK(r.inverses[0].second == 1);

    CHECK_THROWS_WITH_AS(with_inverse(r, "z", "w"), doctest::Contains("no variable named"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(with_inverse(r, "x", "y"), doctest::Contains("already taken"),
                         ValidationError);

    auto ring = PolyRing::make(BaseField::rational(), {"x"});
    auto other = PolyRing::make(BaseField::rational(), {"t"});
    CHECK_THROWS_WITH_AS(presented_ring(ring, {Poly::variable(other, 0)}),
                         doctest::Contains("different ring"), ValidationError);

    Poly x = Poly::variable(ring, 0);
    CHECK_THROWS_WITH_AS(presented_ring(ring, {x - Poly::constant(ring, Rat(1)), x}),
                         doctest::Contains("1 lies in the relation ideal"), ValidationError);
}

TEST_CASE("verify_hom accepts the swap and the root twist, rejects the shift") {
    auto r = laurent_line();
    Poly x = Poly::variable(r.ring, 0), y = Poly::variable(r.ring, 1);
    auto id = r.ring->field().aut(1);

    auto swap = verify_hom(r, {"phi", {y, x}, id});
    CHECK(swap.pass);
    CHECK(swap.checked == 1);
    CHECK(swap.skipped == 0);
    CHECK(swap.witness.empty());

    auto shift = verify_hom(r, {"phi", {x + Poly::constant(r.ring, Rat(1)), y}, id});
    CHECK_FALSE(shift.pass);
    CHECK(shift.witness.find("x*y + y - 1") != std::string::npos);
    CHECK(shift.witness.find("stays outside the relation ideal") != std::string::npos);

    auto cover = cube_root_cover();
    const auto& F = cover.ring->field();
    Poly cy = Poly::variable(cover.ring, 0), cx = Poly::variable(cover.ring, 1);
    auto twist = verify_hom(cover, {"psi", {cy.scaled(F.zeta()), cx}, F.aut(1)});
    CHECK(twist.pass);
    CHECK(twist.checked == 1);

    CHECK_THROWS_WITH_AS(verify_hom(r, {"phi", {x}, id}),
                         doctest::Contains("one image per ring variable"), ValidationError);
    CHECK_THROWS_WITH_AS(verify_hom(r, {"phi", {Poly::variable(cover.ring, 0), y}, id}),
                         doctest::Contains("image in a different ring"), ValidationError);
}

TEST_CASE("verify_hom verdicts survive redundant generators") {
    auto plain = laurent_line();
    Poly x = Poly::variable(plain.ring, 0), y = Poly::variable(plain.ring, 1);
    auto id = plain.ring->field().aut(1);
    Poly g = plain.relations.gens()[0];
    auto padded = presented_ring(plain.ring, {g, x * g, g * g});

    EndoCandidate swap{"phi", {y, x}, id};
    EndoCandidate shift{"phi", {x + Poly::constant(plain.ring, Rat(1)), y}, id};
    CHECK(verify_hom(plain, swap).pass == verify_hom(padded, swap).pass);
    CHECK(verify_hom(plain, shift).pass == verify_hom(padded, shift).pass);
    CHECK(verify_hom(padded, swap).checked == 3);
}

TEST_CASE("verify_relation replays the sum construction and flags a mutation") {
    auto fx = sum_construction();

    auto oc = verify_relation(fx.r, fx.table, {"sigma'", "tau'"}, {"tau'", "sigma'^-1"},
                              {fx.x0, fx.x1});
    CHECK(oc.pass);
    CHECK(oc.checked == 2);
    CHECK(oc.skipped == 0);

    auto mutated = fx.table;
    mutated[2].images[1] = -fx.x1;
    auto bad = verify_relation(fx.r, mutated, {"sigma'", "tau'"}, {"tau'", "sigma'^-1"},
                               {fx.x0, fx.x1});
    CHECK_FALSE(bad.pass);
    CHECK(bad.witness.find("at x0") != std::string::npos);
    CHECK(bad.witness.find("gives") != std::string::npos);

    auto same = verify_relation(fx.r, fx.table, {"tau'"}, {"tau'"}, {fx.x0, fx.x1});
    CHECK(same.pass);
    CHECK(same.checked == 2);

    auto inverse = verify_relation(fx.r, fx.table, {"sigma'", "sigma'^-1"}, {}, {fx.x0, fx.x1});
    CHECK(inverse.pass);

    CHECK_THROWS_WITH_AS(verify_relation(fx.r, fx.table, {"rho"}, {}, {}),
                         doctest::Contains("unknown composition symbol 'rho'"), ValidationError);
    auto cover = cube_root_cover();
    CHECK_THROWS_WITH_AS(
        verify_relation(fx.r, fx.table, {"tau'"}, {}, {Poly::variable(cover.ring, 0)}),
        doctest::Contains("probe lives in a different ring"), ValidationError);
}

TEST_CASE("candidates skip probes that fall off their window") {
    auto ring = PolyRing::make(BaseField::rational(), {"a", "b"});
    Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1);
    EndoCandidate step{"step", {b, Poly()}, ring->field().aut(1)};

    auto moved = apply_endo(step, a + Poly::constant(ring, Rat(2)));
    REQUIRE(moved.has_value());
    CHECK(*moved == b + Poly::constant(ring, Rat(2)));
    CHECK_FALSE(apply_endo(step, b).has_value());
    CHECK(apply_endo(step, Poly::constant(ring, Rat(5))).has_value());
    CHECK_THROWS_WITH_AS(apply_endo(step, Poly()), doctest::Contains("detached"),
                         ValidationError);

    auto r = presented_ring(ring, {a - b});
    auto oc = verify_hom(r, step);
    CHECK(oc.pass);
    CHECK(oc.checked == 0);
    CHECK(oc.skipped == 1);

    auto rel = verify_relation(r, {step}, {"step", "step"}, {}, {a, b});
    CHECK(rel.checked == 0);
    CHECK(rel.skipped == 2);
}

TEST_CASE("scenario A confirms the zeta contradiction for odd n") {
    auto rep = replay_zrtz("A", {.n = 3});
    CHECK(rep.scenario == "A");
    CHECK(rep.verdict);
    CHECK(rep.items.size() == 39);
    for (const auto& it : rep.items) CHECK_MESSAGE(it.pass, it.name, ": ", it.detail);

    CHECK(item_named(rep, "commutation: sigma tau = tau sigma^-1 on the window").detail ==
          "checked 7, skipped 1 at the window edge");
    CHECK(count_passing(rep, "contradiction confirmed") == 3);
    CHECK(count_passing(rep, "conclude sigma^-n(b) = zeta^i b") == 3);
    CHECK(item_named(rep, "[i=2] final: the chains agree only if sigma^n(zeta) = zeta").pass);

    auto rep5 = replay_zrtz("A", {.n = 5});
    CHECK(rep5.verdict);
    CHECK(rep5.items.size() == 39);
    CHECK(item_named(rep5, "commutation: sigma tau = tau sigma^-1 on the window").detail ==
          "checked 11, skipped 1 at the window edge");

    CHECK_THROWS_WITH_AS(replay_zrtz("A", {.n = 4}), doctest::Contains("odd n"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(replay_zrtz("A", {.n = 0}), doctest::Contains("odd n"),
                         ValidationError);
    CHECK_THROWS_AS(replay_zrtz("A", {.n = 101}), ResourceLimit);
}

TEST_CASE("scenario B works for both parities and guards its bounds") {
    auto rep = replay_zrtz("B", {.n = 5});
    CHECK(rep.scenario == "B");
    CHECK(rep.verdict);
    CHECK(rep.items.size() == 12);
    for (const auto& it : rep.items) CHECK_MESSAGE(it.pass, it.name, ": ", it.detail);
    CHECK(item_named(rep, "no proper partial sum of the orbit vanishes").detail ==
          "checked the sums of length 1 to 4");
    CHECK(has_item(rep, "sigma' tau' = tau' sigma'^-1 at x3"));
    CHECK(item_named(rep, "tau'(x_{n-1}) = -x_1").pass);

    auto even = replay_zrtz("B", {.n = 4});
    CHECK(even.verdict);
    CHECK(even.items.size() == 11);
    auto n3 = replay_zrtz("B", {.n = 3});
    CHECK(n3.verdict);
    CHECK(n3.items.size() == 10);

    CHECK_THROWS_WITH_AS(replay_zrtz("B", {.n = 2}), doctest::Contains("n > 2"),
                         ValidationError);
    CHECK_THROWS_AS(replay_zrtz("B", {.n = 500}), ResourceLimit);
}

TEST_CASE("scenario C replays the cube-root tower on its window") {
    auto rep = replay_zrtz("C");
    CHECK(rep.scenario == "C");
    CHECK(rep.verdict);
    CHECK(rep.items.size() == 37);
    for (const auto& it : rep.items) CHECK_MESSAGE(it.pass, it.name, ": ", it.detail);

    CHECK(item_named(rep, "sigma' maps the cube relations into the ideal").detail ==
          "checked 7, skipped 1 at the window edge");
    CHECK(item_named(rep, "tau' maps the cube relations into the ideal").detail == "checked 8");
    CHECK(item_named(rep, "commutation: sigma' tau' = tau' sigma'^-1 across the window")
              .detail == "checked 14, skipped 2 at the window edge");
    CHECK(item_named(rep, "tau' matches the displayed table on the y's").detail ==
          "checked 8 entries");
    CHECK(has_item(rep, "tau'(x_-3) = x_4"));
    CHECK(has_item(rep, "K(x): = tau'(sigma'^-1(x))"));
    CHECK(has_item(rep, "sigma'(tau'(y_-1)) = zeta^1 y_3"));

    ZrtzParams tight;
    tight.window_lo = -2;
    tight.window_hi = 3;
    auto small = replay_zrtz("C", tight);
    CHECK(small.verdict);
    CHECK(small.items.size() == 35);
    CHECK_FALSE(has_item(small, "tau'(x_-3) = x_4"));
    CHECK_FALSE(has_item(small, "tau'(x_4) = x_-3"));
    CHECK(item_named(small, "tau' matches the displayed table on the y's").detail ==
          "checked 6 entries");

    ZrtzParams narrow;
    narrow.window_lo = -1;
    narrow.window_hi = 3;
    CHECK_THROWS_WITH_AS(replay_zrtz("C", narrow), doctest::Contains("[-2, 3]"),
                         ValidationError);
    ZrtzParams wide;
    wide.window_lo = -40;
    wide.window_hi = 40;
    CHECK_THROWS_AS(replay_zrtz("C", wide), ResourceLimit);

    CHECK_THROWS_WITH_AS(replay_zrtz("Z"), doctest::Contains("unknown scenario 'Z'"),
                         ValidationError);
}
