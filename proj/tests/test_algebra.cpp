#include "gtcf/errors.hpp"
#include "gtcf/field.hpp"
#include "gtcf/groebner.hpp"
#include "gtcf/parse.hpp"
#include "gtcf/poly.hpp"

#include <doctest.h>

#include <random>

using namespace gtcf;
using namespace gtcf::algebra;

namespace {

RingPtr qxyz() {
    return PolyRing::make(BaseField::rational(), {"x", "y", "z"});
}

Poly P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

} // namespace

TEST_CASE("cyclotomic field Q(zeta_3)") {
    BaseField f = BaseField::cyclotomic(3);
    CHECK(f.degree() == 2);
    // Phi_3 = x^2 + x + 1
    CHECK(f.min_poly() == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});

    FieldElem z = f.zeta();
    FieldElem z2 = f.mul(z, z);
    CHECK(f.to_string(z2) == "-zeta - 1");
    CHECK(f.is_one(f.mul(z2, z))); // zeta^3 = 1
    CHECK(f.is_zero(f.add(f.add(z2, z), f.one())));

    // (1 + zeta)^-1 = -zeta
    FieldElem a = f.add(f.one(), z);
    CHECK(f.inv(a) == f.neg(z));
    CHECK(f.is_one(f.mul(a, f.inv(a))));

    FieldAut s = f.aut(2);
    CHECK(f.apply_aut(s, z) == z2);
    CHECK(f.compose(s, s) == f.aut(1)); // zeta -> zeta^4 = zeta
    CHECK(f.aut_inverse(s) == s);
    CHECK_THROWS_AS(f.aut(3), ValidationError); // gcd(3,3) != 1
}

TEST_CASE("cyclotomic field Q(zeta_4) and Q(zeta_12)") {
    BaseField f = BaseField::cyclotomic(4);
    CHECK(f.min_poly() == std::vector<Rat>{Rat(1), Rat(0), Rat(1)}); // x^2 + 1
    FieldElem z = f.zeta();
    CHECK(f.mul(z, z) == f.from_rat(Rat(-1)));
    // (1 + i)^-1 = (1 - i)/2
    FieldElem inv = f.inv(f.add(f.one(), z));
    FieldElem expect{{Rat(1, 2), Rat(-1, 2)}};
    CHECK(inv == expect);

    BaseField g = BaseField::cyclotomic(12);
    // Phi_12 = x^4 - x^2 + 1
    CHECK(g.min_poly() == std::vector<Rat>{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)});
    CHECK(g.degree() == 4);
    FieldAut a5 = g.aut(5), a7 = g.aut(7);
    CHECK(g.compose(a5, a7) == g.aut(35 % 12));
    FieldElem w = g.zeta_pow(7);
    CHECK(g.apply_aut(a7, g.zeta()) == w);
    CHECK(g.is_one(g.mul(w, g.inv(w))));
}

TEST_CASE("rational field basics") {
    BaseField f = BaseField::rational();
    CHECK(f.degree() == 1);
    CHECK(f.to_string(f.from_rat(Rat(-5, 3))) == "-5/3");
    CHECK_THROWS_AS(f.zeta(), ValidationError);
    CHECK_THROWS_AS(f.inv(f.zero()), ValidationError);
    CHECK(f.apply_aut(f.aut(1), f.from_rat(Rat(7))) == f.from_rat(Rat(7)));
}

TEST_CASE("polynomial parsing and printing") {
    auto r = qxyz();
    CHECK(P(r, "x + y - x").to_string() == "y");
    CHECK(P(r, "3/4*x^2*y - 2").to_string() == "3/4*x^2*y - 2");
    CHECK(P(r, "(x + y)^2").to_string() == "x^2 + 2*x*y + y^2");
    CHECK(P(r, "-x*(y - z)").to_string() == "-x*y + x*z");
    CHECK(P(r, "0").is_zero());
    CHECK(P(r, "2 - 2").is_zero());
    CHECK(P(r, "x^3").degree() == 3);

    CHECK_THROWS_AS(P(r, "x + w"), ValidationError);
    CHECK_THROWS_AS(P(r, "x +"), ValidationError);
    CHECK_THROWS_AS(P(r, "(x"), ValidationError);
    CHECK_THROWS_AS(P(r, "x y"), ValidationError);   // implicit products rejected
    CHECK_THROWS_AS(P(r, "x^-2"), ValidationError);
    CHECK_THROWS_AS(P(r, "1/0"), ValidationError);
    CHECK_THROWS_AS(P(r, "zeta"), ValidationError);  // rational base field

    auto c = PolyRing::make(BaseField::cyclotomic(3), {"x"});
    Poly p = P(c, "(zeta + 1)*x - zeta^2");
    CHECK(p.to_string() == "(zeta + 1)*x + (zeta + 1)");
    CHECK(parse_poly(c, p.to_string()) == p);
}

TEST_CASE("parse error positions are reported") {
    auto r = qxyz();
    try {
        P(r, "x + qq*y");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("position 4") != std::string::npos);
        CHECK(std::string(e.what()).find("qq") != std::string::npos);
    }
}

TEST_CASE("polynomial ring validation") {
    CHECK_THROWS_AS(PolyRing::make(BaseField::rational(), {"x", "x"}), ValidationError);
    CHECK_THROWS_AS(PolyRing::make(BaseField::rational(), {"zeta"}), ValidationError);
    auto a = PolyRing::make(BaseField::rational(), {"x"});
    auto b = PolyRing::make(BaseField::rational(), {"y"});
    CHECK_THROWS_AS(Poly::variable(a, 0) + Poly::variable(b, 0), ValidationError);
}

TEST_CASE("random polynomial arithmetic laws") {
    auto r = qxyz();
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<unsigned> expo(0, 2);
    auto random_poly = [&] {
        Poly p = Poly::zero(r);
        for (int t = 0; t < 4; ++t) {
            Mono m{expo(rng), expo(rng), expo(rng)};
            p.add_term(m, r->field().from_rat(Rat(coeff(rng))));
        }
        return p;
    };
    for (int it = 0; it < 200; ++it) {
        Poly a = random_poly(), b = random_poly(), c = random_poly();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK((a - b) + b == a);
        if (!a.is_zero()) CHECK(parse_poly(r, a.to_string()) == a);
    }
}

TEST_CASE("groebner basis of the twisted cubic (frozen)") {
    auto r = qxyz();
    MonOrder lex = MonOrder::lex(3);
    auto gb = groebner(r, {P(r, "y - x^2"), P(r, "z - x^3")}, lex);
    REQUIRE(gb.size() == 4);
    CHECK(gb[0].to_string() == "y^3 - z^2");
    CHECK(gb[1].to_string() == "x*z - y^2");
    CHECK(gb[2].to_string() == "x*y - z");
    CHECK(gb[3].to_string() == "x^2 - y");
}

TEST_CASE("groebner basis is canonical across presentations") {
    auto r = qxyz();
    Ideal a(r, {P(r, "y - x^2"), P(r, "z - x^3")});
    Ideal b(r, {P(r, "y - x^2 + 2*(z - x^3)"), P(r, "z - x^3"), P(r, "0")});
    CHECK(ideal_equal(a, b));
    // Idempotence: rebuilding from a reduced basis reproduces it.
    Ideal c(r, a.lex_basis());
    CHECK(c.lex_basis() == a.lex_basis());
}

TEST_CASE("ideal membership") {
    auto r = qxyz();
    Ideal i(r, {P(r, "y - x^2"), P(r, "z - x^3")});
    CHECK(i.contains(P(r, "y^3 - z^2")));
    CHECK(i.contains(P(r, "(y - x^2)*(x + y + z)")));
    CHECK_FALSE(i.contains(P(r, "x^2 - z")));
    CHECK_FALSE(i.is_trivial());
    Ideal unit(r, {P(r, "x"), P(r, "x - 1")});
    CHECK(unit.is_trivial());
}

TEST_CASE("elimination ideals") {
    auto r = qxyz();
    Ideal i(r, {P(r, "y - x^2"), P(r, "z - x^3")});
    SUBCASE("eliminate x") {
        Ideal e = eliminate(i, {false, true, true});
        REQUIRE(e.ring()->vars() == std::vector<std::string>{"y", "z"});
        REQUIRE(e.lex_basis().size() == 1);
        CHECK(e.lex_basis()[0].to_string() == "y^3 - z^2");
    }
    SUBCASE("eliminate middle variable of a chained graph") {
        Ideal g(r, {P(r, "y - x^2"), P(r, "z - y^2")});
        Ideal e = eliminate(g, {true, false, true});
        REQUIRE(e.lex_basis().size() == 1);
        CHECK(e.lex_basis()[0].to_string() == "x^4 - z");
    }
    SUBCASE("eliminating nothing reproduces the lex basis") {
        Ideal e = eliminate(i, {true, true, true});
        CHECK(e.lex_basis() == i.lex_basis());
    }
}

TEST_CASE("field automorphisms on ideals") {
    auto r = PolyRing::make(BaseField::cyclotomic(3), {"x"});
    Ideal i(r, {P(r, "x - zeta")});
    Ideal j = apply_field_aut(i, r->field().aut(2));
    Ideal expect(r, {P(r, "x - zeta^2")});
    CHECK(ideal_equal(j, expect));
    CHECK_FALSE(ideal_equal(j, i));
}

TEST_CASE("resource limits trip deterministically") {
    auto r = qxyz();
    Ideal i(r, {P(r, "y - x^2"), P(r, "z - x^3")});
    Limits tight;
    tight.max_degree = 2;
    CHECK_THROWS_AS(i.basis(MonOrder::lex(3), tight), ResourceLimit);
    // And identically on a second attempt.
    CHECK_THROWS_AS(groebner(r, i.gens(), MonOrder::lex(3), tight), ResourceLimit);
}

TEST_CASE("reduction against a basis") {
    auto r = qxyz();
    MonOrder lex = MonOrder::lex(3);
    auto gb = groebner(r, {P(r, "y - x^2"), P(r, "z - x^3")}, lex);
    CHECK(reduce(P(r, "x^4"), gb, lex) == P(r, "y^2"));
    CHECK(reduce(P(r, "x^2*y - z^2"), gb, lex) == P(r, "y^2 - z^2"));
}
