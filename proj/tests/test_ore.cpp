#include "support.hpp"

using namespace pdga;
using namespace pdga::test;

namespace {

struct Weyl {
    Ring r = ring_of({"a"});
    PresentedAlgebra A = PresentedAlgebra::polynomial_ring(r, true);
    Derivation d = Derivation::partial(A, 0);
    OrePolynomial O(std::string_view text) const { return parse_ore(text, d); }
};

OrePolynomial random_ore(std::mt19937_64& rng, const Derivation& d, int x_degree, int base_degree) {
    std::vector<Polynomial> cs;
    for (int i = 0; i <= x_degree; ++i) cs.push_back(random_polynomial(rng, d.algebra().ring(), base_degree, 2));
    return OrePolynomial(d, cs);
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// Product from the closed formula x^n r = sum_k C(n,k) delta^k(r) x^{n-k}; shares
// nothing with the rewriting loop of the library.
OrePolynomial closed_form_product(const OrePolynomial& f, const OrePolynomial& g) {
    const auto& d = f.twist();
    const auto& A = d.algebra();
    std::vector<Polynomial> out(static_cast<std::size_t>(std::max(0, f.degree() + g.degree() + 1)), Polynomial(A.ring()));
    for (int n = 0; n <= f.degree(); ++n)
        for (int m = 0; m <= g.degree(); ++m) {
            Polynomial r = g.coefficient(static_cast<std::size_t>(m));
            for (int k = 0; k <= n; ++k) {
                out[static_cast<std::size_t>(n - k + m)] +=
                    f.coefficient(static_cast<std::size_t>(n)) * r * Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
                r = d(r);
            }
        }
    return OrePolynomial(d, out);
}

}  // namespace

TEST_CASE("rewriting rule") {
    Weyl w;
    CHECK(ore_mul(w.O("X"), w.O("a")) == w.O("a*X + 1"));
    CHECK(ore_mul(w.O("X^2"), w.O("a")) == w.O("a*X^2 + 2*X"));
    auto f = w.O("a^2*X^3 - X + 5");
    CHECK(ore_mul(f, w.O("1")) == f);
    CHECK(ore_mul(w.O("1"), f) == f);
    CHECK(ore_mul(w.O("a"), w.O("a^2 + 1")) == w.O("a^3 + a"));
    CHECK(f.degree() == 3);
    CHECK(w.O("0").is_zero());
    CHECK(w.O("0").degree() == -1);
    CHECK(x_times(w.O("a")) == w.O("a*X + 1"));
}

TEST_CASE("printing and parsing") {
    Weyl w;
    auto f = w.O("(a + 1)*X^2 - X + a");
    CHECK(f.to_string() == "(a + 1)*X^2 - X + a");
    CHECK(parse_ore(f.to_string(), w.d) == f);
    CHECK(w.O("3*a*X").to_string() == "3*a*X");
    CHECK_THROWS_AS(parse_ore("a*X", w.d, "a"), PreconditionError);
}

TEST_CASE("twists must agree") {
    Weyl w;
    Derivation other(w.A, Ps(w.r, {"a"}));
    CHECK_THROWS_AS(ore_mul(w.O("X"), parse_ore("X", other)), RingMismatch);
}

TEST_CASE("associativity and agreement with the closed formula") {
    std::mt19937_64 rng(81);
    auto r = ring_of({"a", "b"});
    auto A = PresentedAlgebra::polynomial_ring(r, true);
    std::vector<Derivation> twists{Derivation::partial(A, 0), Derivation(A, Ps(r, {"b", "a"})),
                                   Derivation(A, Ps(r, {"a^2", "1"}))};
    for (int k = 0; k < 200; ++k) {
        const auto& d = twists[static_cast<std::size_t>(k) % twists.size()];
        std::uniform_int_distribution<int> deg(0, 3);
        auto f = random_ore(rng, d, deg(rng), 2);
        auto g = random_ore(rng, d, deg(rng), 2);
        auto h = random_ore(rng, d, deg(rng), 2);
        REQUIRE(ore_mul(ore_mul(f, g), h) == ore_mul(f, ore_mul(g, h)));
        REQUIRE(ore_mul(f, g) == closed_form_product(f, g));
        REQUIRE(ore_mul(f, g + h) == ore_mul(f, g) + ore_mul(f, h));
        REQUIRE(ore_mul(f + g, h) == ore_mul(f, h) + ore_mul(g, h));
        auto c = random_rational(rng);
        REQUIRE(ore_mul(f * c, g) == ore_mul(f, g) * c);
        REQUIRE(ore_mul(f, g * c) == ore_mul(f, g) * c);
        if (!f.is_zero() && !g.is_zero()) REQUIRE(ore_mul(f, g).degree() == f.degree() + g.degree());
    }
}

TEST_CASE("arithmetic in a quotient base") {
    std::mt19937_64 rng(82);
    auto r = ring_of({"a", "b"});
    PresentedAlgebra A(r, Ps(r, {"a^2 - b^2"}));
    Derivation d(A, Ps(r, {"b", "a"}));
    for (int k = 0; k < 50; ++k) {
        auto f = random_ore(rng, d, 2, 2), g = random_ore(rng, d, 2, 2), h = random_ore(rng, d, 1, 2);
        REQUIRE(ore_mul(ore_mul(f, g), h) == ore_mul(f, ore_mul(g, h)));
        REQUIRE(ore_mul(f, g) == closed_form_product(f, g));
    }
}

TEST_CASE("induced two-sided ideals") {
    std::mt19937_64 rng(83);
    auto r = ring_of({"a", "b"});
    auto A = PresentedAlgebra::polynomial_ring(r, true);
    Derivation swap(A, Ps(r, {"b", "a"}));
    std::vector<std::pair<OrePolynomial, OrePolynomial>> samples;
    for (int k = 0; k < 10; ++k) samples.emplace_back(random_ore(rng, swap, 2, 2), random_ore(rng, swap, 2, 2));
    samples.emplace_back(parse_ore("X", swap), parse_ore("a*X + b", swap));

    auto cert = induced_two_sided(ideal(r, {"a^2 - b^2"}), swap, samples);
    CHECK(cert.ok);
    CHECK(cert.checks > 0);
    CHECK(ore_mul(parse_ore("X", swap), parse_ore("a^2 - b^2", swap)) == parse_ore("(a^2 - b^2)*X", swap));

    CHECK(induced_two_sided(GroebnerBasis(r), swap, samples).ok);

    Derivation euler(A, Ps(r, {"a", "0"}));
    CHECK(ore_mul(parse_ore("X", euler), parse_ore("a", euler)) == parse_ore("a*X + a", euler));
    std::vector<std::pair<OrePolynomial, OrePolynomial>> es;
    for (int k = 0; k < 10; ++k) es.emplace_back(random_ore(rng, euler, 2, 2), random_ore(rng, euler, 2, 2));
    CHECK(induced_two_sided(ideal(r, {"a"}), euler, es).ok);

    CHECK_THROWS_AS(induced_two_sided(ideal(r, {"a"}), swap, samples), PreconditionError);
}

TEST_CASE("growth sequences") {
    Weyl w;
    std::vector<OrePolynomial> comm{w.O("1"), w.O("a")};
    auto c = growth_sequence(comm, 6);
    CHECK(c == std::vector<std::size_t>{2, 3, 4, 5, 6, 7});

    std::vector<OrePolynomial> weyl{w.O("1"), w.O("a"), w.O("X")};
    auto s = growth_sequence(weyl, 8);
    for (std::size_t n = 1; n <= s.size(); ++n) CHECK(s[n - 1] == (n + 1) * (n + 2) / 2);

    std::vector<OrePolynomial> one{w.O("1")};
    CHECK(growth_sequence(one, 5) == std::vector<std::size_t>{1, 1, 1, 1, 1});

    std::vector<OrePolynomial> no_one{w.O("a")};
    CHECK_THROWS_AS(growth_sequence(no_one, 5), PreconditionError);
    CHECK_THROWS_AS(growth_sequence(comm, 3), PreconditionError);
}

TEST_CASE("growth is nondecreasing in a quotient base") {
    auto r = ring_of({"a", "b"});
    PresentedAlgebra A(r, Ps(r, {"a^2 - b^3"}));
    Derivation d(A, Ps(r, {"3*b^2", "2*a"}));
    std::vector<OrePolynomial> v{parse_ore("1", d), parse_ore("a", d), parse_ore("b", d), parse_ore("X", d)};
    auto dims = growth_sequence(v, 6);
    for (std::size_t i = 1; i < dims.size(); ++i) CHECK(dims[i - 1] <= dims[i]);
}

TEST_CASE("GK estimates") {
    std::vector<std::size_t> quad, lin, flat;
    for (std::size_t n = 1; n <= 30; ++n) {
        quad.push_back((n + 1) * (n + 2) / 2);
        lin.push_back(n + 1);
        flat.push_back(7);
    }
    auto q = gk_estimate(quad);
    CHECK(q.estimate >= 1.8);
    CHECK(q.estimate <= 2.2);
    CHECK(q.points == 15);
    CHECK(gk_estimate(lin).estimate == doctest::Approx(1.0).epsilon(0.1));
    CHECK(gk_estimate(flat).estimate == doctest::Approx(0.0));
    CHECK(gk_estimate(flat).residual == doctest::Approx(0.0));
    std::vector<std::size_t> short_seq{1, 2, 3, 4};
    CHECK_THROWS_AS(gk_estimate(short_seq), PreconditionError);
    CHECK_THROWS_AS(gk_estimate(quad, 0.0), PreconditionError);
}

TEST_CASE("GK dimension grows by one under the skew extension") {
    Weyl w;
    std::vector<OrePolynomial> base{w.O("1"), w.O("a")};
    std::vector<OrePolynomial> ext{w.O("1"), w.O("a"), w.O("X")};
    auto gb = gk_estimate(growth_sequence(base, 24)).estimate;
    auto ge = gk_estimate(growth_sequence(ext, 24)).estimate;
    CHECK(std::abs(ge - (gb + 1)) <= 0.4);
    CHECK(std::abs(gb - krull_dim(w.A)) <= 0.4);

    auto r = ring_of({"a", "b"});
    PresentedAlgebra curve(r, Ps(r, {"a^2 - b^3"}));
    auto z = Derivation::zero(curve);
    std::vector<OrePolynomial> gens{parse_ore("1", z), parse_ore("a", z), parse_ore("b", z)};
    auto gc = gk_estimate(growth_sequence(gens, 24)).estimate;
    CHECK(std::abs(gc - krull_dim(curve)) <= 0.4);
}
