#include "support.hpp"

using namespace pdga;
using namespace pdga::test;

TEST_CASE("parse and print canonical forms") {
    auto r = ring_of({"x", "y"});
    auto p = P(r, "x^2 - y");
    REQUIRE(p.size() == 2);
    CHECK(p.coefficient_of(Monomial({2, 0})) == 1);
    CHECK(p.coefficient_of(Monomial({0, 1})) == -1);
    CHECK(str(p) == "x^2 - y");

    CHECK(P(r, "0").is_zero());
    CHECK(str(P(r, "0")) == "0");
    CHECK(str(P(r, "1/2*x")) == "1/2*x");
    CHECK(str(P(r, "-(x)")) == "-x");
    CHECK(str(P(r, "(x + y)^2")) == "x^2 + 2*x*y + y^2");
    CHECK(str(P(r, "x/2 + 3/6")) == "1/2*x + 1/2");
    CHECK(str(P(r, "  x  *  # comment\n y ")) == "x*y");
}

TEST_CASE("parse errors carry offsets") {
    auto r = ring_of({"x", "y"});
    try {
        P(r, "x +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    try {
        P(r, "x + zz");
        FAIL("expected an unknown variable");
    } catch (const UnknownVariable& e) {
        CHECK(e.name() == "zz");
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(P(r, "x y"), ParseError);
    CHECK_THROWS_AS(P(r, "x/y"), ParseError);
    CHECK_THROWS_AS(P(r, "x/0"), ParseError);
    CHECK_THROWS_AS(P(r, "x^-1"), ParseError);
    CHECK_THROWS_AS(P(r, "(x"), ParseError);
}

TEST_CASE("arithmetic examples") {
    auto r = ring_of({"x", "y"});
    CHECK(P(r, "x+y") * P(r, "x-y") == P(r, "x^2-y^2"));
    auto p = P(r, "3*x*y - 7");
    CHECK(p + Polynomial(r) == p);
    CHECK(P(r, "1/2*x") * Rational(2) == P(r, "x"));
    CHECK(P(r, "x+1").pow(3) == P(r, "x^3 + 3*x^2 + 3*x + 1"));
    CHECK(P(r, "x").pow(0) == P(r, "1"));
    CHECK_THROWS_AS(P(r, "x").pow(-1), PreconditionError);
    auto other = ring_of({"x", "z"});
    CHECK_THROWS_AS(P(r, "x") + P(other, "x"), RingMismatch);
}

TEST_CASE("partial derivatives") {
    auto r = ring_of({"x", "y"});
    CHECK(partial_derivative(P(r, "x^2*y"), "x") == P(r, "2*x*y"));
    CHECK(partial_derivative(P(r, "y^3"), "x").is_zero());
    CHECK(partial_derivative(P(r, "x^2 - y"), "y") == P(r, "-1"));
    CHECK_THROWS_AS(partial_derivative(P(r, "x"), "w"), UnknownVariable);
}

TEST_CASE("ring validation") {
    CHECK_THROWS(VariableRing::make({"x", "x"}));
    CHECK_THROWS(VariableRing::make({"1x"}));
    auto r = ring_of({"a", "b", "c"});
    CHECK(r->describe() == "Q[a,b,c] grevlex");
}

TEST_CASE("grevlex and lex orders") {
    auto g = ring_of({"x", "y", "z"});
    // grevlex: x*z^2 < y^3 since the last variable breaks ties in reverse.
    CHECK(g->compare(Monomial({0, 3, 0}), Monomial({1, 0, 2})) > 0);
    CHECK(g->compare(Monomial({1, 0, 0}), Monomial({0, 0, 2})) < 0);
    auto l = VariableRing::make({"x", "y", "z"}, MonomialOrder::lex());
    CHECK(l->compare(Monomial({1, 0, 0}), Monomial({0, 5, 5})) > 0);
}

TEST_CASE("ring laws on random triples") {
    std::mt19937_64 rng(11);
    auto r = ring_of({"x", "y", "z"});
    for (int k = 0; k < 1000; ++k) {
        auto a = random_polynomial(rng, r, 6, 4);
        auto b = random_polynomial(rng, r, 6, 4);
        auto c = random_polynomial(rng, r, 6, 4);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * b == b * a);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE(a - a == Polynomial(r));
    }
}

TEST_CASE("multiplication agrees with pointwise evaluation") {
    std::mt19937_64 rng(12);
    auto r = ring_of({"x", "y", "z"});
    for (int k = 0; k < 300; ++k) {
        auto a = random_polynomial(rng, r, 5, 5);
        auto b = random_polynomial(rng, r, 5, 5);
        auto pt = random_point(rng, 3);
        REQUIRE(eval(a * b, pt) == eval(a, pt) * eval(b, pt));
        REQUIRE(eval(a + b, pt) == eval(a, pt) + eval(b, pt));
        std::vector<Polynomial> images;
        for (const auto& c : pt) images.push_back(Polynomial::constant(r, c));
        REQUIRE(substitute(a, r, images) == Polynomial::constant(r, eval(a, pt)));
    }
}

TEST_CASE("print-parse round trip") {
    std::mt19937_64 rng(13);
    auto r = ring_of({"x", "y", "z"});
    for (int k = 0; k < 1000; ++k) {
        auto p = random_polynomial(rng, r, 6, 6);
        auto text = str(p);
        auto back = P(r, text);
        REQUIRE(back == p);
        REQUIRE(str(back) == text);
    }
}

TEST_CASE("Leibniz rule for partial derivatives") {
    std::mt19937_64 rng(14);
    auto r = ring_of({"x", "y", "z"});
    for (int k = 0; k < 300; ++k) {
        auto a = random_polynomial(rng, r, 5, 4);
        auto b = random_polynomial(rng, r, 5, 4);
        for (std::size_t v = 0; v < 3; ++v)
            REQUIRE(partial_derivative(a * b, v) == a * partial_derivative(b, v) + b * partial_derivative(a, v));
    }
}

TEST_CASE("declaration files") {
    const char* text = R"(# fixture
ring Q[x, y, z]
ideal M = {x, y - 1}
derivation d = {x -> y, y -> x, z -> 0}
poisson B = {[x, y] = z, [y, z] = x, [z, x] = y}
section s = {x -> 1, y -> 2*x, z -> 0}
)";
    auto decl = parse_declarations(text);
    REQUIRE(decl.ring->size() == 3);
    CHECK(decl.ideals.at("M").size() == 2);
    CHECK(str(decl.derivations.at("d")[1]) == "x");
    const auto& b = decl.poisson.at("B");
    CHECK(str(b.at({0, 1})) == "z");
    CHECK(str(b.at({1, 2})) == "x");
    // [z, x] = y is stored as {x, z} = -y.
    CHECK(str(b.at({0, 2})) == "-y");
    CHECK(str(decl.sections.at("s")[1]) == "2*x");
}

TEST_CASE("declaration errors") {
    CHECK_THROWS_AS(parse_declarations("ideal I = {x}"), ParseError);
    CHECK_THROWS_AS(parse_declarations("ring Q[x]\nderivation d = {x -> 1, x -> 2}"), ParseError);
    CHECK_THROWS_AS(parse_declarations("ring Q[x,y]\nderivation d = {x -> 1}"), ParseError);
    CHECK_THROWS_AS(parse_declarations("ring Q[x,y]\nideal I = {w}"), UnknownVariable);
    CHECK_THROWS_AS(parse_declarations("ring Q[x,y]\npoisson B = {[x, x] = 1}"), ParseError);
    try {
        parse_declarations("ring Q[x]\nideal I = {x +}");
        FAIL("expected error");
    } catch (const ParseError& e) {
        auto [line, col] = line_col("ring Q[x]\nideal I = {x +}", e.offset());
        CHECK(line == 2);
        CHECK(col == 15);
    }
}
