#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace pdga;
using namespace pdga::test;
using json = nlohmann::json;

namespace {

std::string fx(const std::string& name) { return std::string(PDGA_FIXTURES) + "/" + name; }

struct Outcome {
    int code;
    std::string out;
    std::string err;
    json cert() const { return json::parse(out); }
};

Outcome pdga_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Declarations load(const std::string& name) {
    std::ifstream in(fx(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_declarations(buf.str());
}

std::vector<Polynomial> polys(const Ring& r, const json& arr) {
    std::vector<Polynomial> out;
    for (const auto& s : arr) out.push_back(parse_polynomial(s.get<std::string>(), r));
    return out;
}

void check_schema(const json& c, const std::string& command) {
    REQUIRE(c.contains("command"));
    CHECK(c["command"] == command);
    CHECK(c["verdict"].is_string());
    CHECK(c["witnesses"].is_object());
    CHECK(c["assumptions"].is_array());
    CHECK(c["timings_ms"].is_number());
}

}  // namespace

TEST_CASE("poisson structure commands") {
    auto ok = pdga_run({"jacobi", fx("so3.pdga"), "--structure", "B"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("validated") != std::string::npos);

    auto bad = pdga_run({"jacobi", fx("so3.pdga"), "--structure", "Bent", "--json"});
    CHECK(bad.code == 1);
    auto c = bad.cert();
    check_schema(c, "jacobi");
    CHECK(c["verdict"] == "false");
    CHECK(c["witnesses"]["jacobiator"] == "-z");
    // Round trip: the reported triple and value match the library.
    auto decl = load("so3.pdga");
    auto b = PoissonStructure::unchecked(PresentedAlgebra::polynomial_ring(decl.ring), decl.poisson.at("Bent"));
    auto t = c["witnesses"]["triple"];
    auto f = [&](int i) { return parse_polynomial(t[i].get<std::string>(), decl.ring); };
    auto jac = bracket(b, f(0), bracket(b, f(1), f(2))) + bracket(b, f(2), bracket(b, f(0), f(1))) +
               bracket(b, f(1), bracket(b, f(2), f(0)));
    CHECK(jac == parse_polynomial(c["witnesses"]["jacobiator"].get<std::string>(), decl.ring));

    CHECK(pdga_run({"check-poisson", fx("so3.pdga"), "--structure", "B"}).code == 0);
    CHECK(pdga_run({"check-poisson", fx("so3.pdga"), "--structure", "Bent"}).code == 1);

    auto br = pdga_run({"bracket", fx("weyl.pdga"), "--structure", "B", "x^2", "y"});
    CHECK(br.code == 0);
    CHECK(br.out.find("2*x") != std::string::npos);
    auto cas = pdga_run({"bracket", fx("so3.pdga"), "--structure", "B", "x^2 + y^2 + z^2", "x", "--json"});
    CHECK(cas.cert()["witnesses"]["result"] == "0");
}

TEST_CASE("ideal commands") {
    CHECK(pdga_run({"poisson-ideal", fx("affine.pdga"), "--structure", "B", "--ideal", "Axis"}).code == 0);
    auto no = pdga_run({"poisson-ideal", fx("weyl.pdga"), "--structure", "B", "--ideal", "Line", "--json"});
    CHECK(no.code == 1);
    auto esc = no.cert()["witnesses"]["escape"];
    auto decl = load("weyl.pdga");
    auto b = PoissonStructure::make(PresentedAlgebra::polynomial_ring(decl.ring), decl.poisson.at("B"));
    auto g = parse_polynomial(esc["generator"].get<std::string>(), decl.ring);
    auto v = Polynomial::variable(decl.ring, esc["variable"].get<std::string>());
    CHECK(to_string(bracket(b, g, v)) == esc["bracket"]);
    CHECK_FALSE(buchberger(decl.ring, decl.ideals.at("Line")).contains(bracket(b, g, v)));

    auto cl = pdga_run({"closure", fx("plane.pdga"), "--derivation", "swap", "--ideal", "X", "--json"});
    CHECK(cl.code == 0);
    auto pd = load("plane.pdga");
    auto closed = buchberger(pd.ring, polys(pd.ring, cl.cert()["witnesses"]["ideal"]));
    CHECK(ideal_equal(closed, ideal(pd.ring, {"x", "y"})));
    CHECK(cl.cert()["witnesses"]["rounds"] == 2);
}

TEST_CASE("core descent command") {
    auto stable = pdga_run({"core", fx("affine.pdga"), "--structure", "B", "--ideal", "P", "--max-iter", "5"});
    CHECK(stable.code == 0);
    CHECK(stable.out.find("core: stabilized") != std::string::npos);

    auto r = pdga_run({"core", fx("affine.pdga"), "--structure", "B", "--ideal", "M", "--max-iter", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("not stabilized") != std::string::npos);
    auto j = pdga_run({"core", fx("affine.pdga"), "--structure", "B", "--ideal", "M", "--max-iter", "5", "--json"});
    auto c = j.cert();
    check_schema(c, "core");
    CHECK(c["witnesses"]["stabilized"] == false);
    auto decl = load("affine.pdga");
    const auto& chain = c["witnesses"]["chain"];
    REQUIRE(chain.size() >= 2);
    const auto& drops = c["witnesses"]["drop_witnesses"];
    for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
        auto jn = buchberger(decl.ring, polys(decl.ring, chain[n]));
        auto jm = buchberger(decl.ring, polys(decl.ring, chain[n + 1]));
        CHECK(jn.contains(jm));
        auto w = parse_polynomial(drops[n].get<std::string>(), decl.ring);
        CHECK(jn.contains(w));
        CHECK_FALSE(jm.contains(w));
    }
}

TEST_CASE("constant commands") {
    auto found = pdga_run({"constants", fx("weyl.pdga"), "--domain", "--derivation", "euler", "--space", "V", "--json"});
    CHECK(found.code == 0);
    auto c = found.cert();
    CHECK(c["verdict"] == "found");
    CHECK(c["assumptions"] == json::array({"domain_claim"}));
    auto decl = load("weyl.pdga");
    auto A = PresentedAlgebra::polynomial_ring(decl.ring, true);
    std::vector<Derivation> ds{Derivation(A, decl.derivations.at("euler"))};
    auto a = parse_polynomial(c["witnesses"]["numerator"].get<std::string>(), decl.ring);
    auto b = parse_polynomial(c["witnesses"]["denominator"].get<std::string>(), decl.ring);
    CHECK(is_constant_fraction(A, a, b, ds));
    CHECK_FALSE(is_rational_multiple(A, a, b));

    auto none = pdga_run({"constants", fx("weyl.pdga"), "--domain", "--derivation", "weighted", "--space", "V",
                          "--family", "X"});
    CHECK(none.code == 1);
    CHECK(pdga_run({"constants", fx("weyl.pdga"), "--derivation", "euler", "--space", "V"}).code == 2);

    CHECK(pdga_run({"const-frac", fx("weyl.pdga"), "--domain", "--derivation", "euler", "x", "y"}).code == 0);
    CHECK(pdga_run({"const-frac", fx("weyl.pdga"), "--domain", "--derivation", "weighted", "x", "y"}).code == 1);
}

TEST_CASE("D-geometry commands") {
    auto pr = pdga_run({"prolong", fx("plane.pdga"), "--ideal", "Parabola", "--json"});
    CHECK(pr.code == 0);
    auto names = pr.cert()["witnesses"]["ring"].get<std::vector<std::string>>();
    auto tr = ring_of(names);
    auto tau = buchberger(tr, polys(tr, pr.cert()["witnesses"]["ideal"]));
    CHECK(ideal_equal(tau, buchberger(tr, Ps(tr, {"x^2 - y", "2*x*Y1 - Y2"}))));

    auto pres = std::vector<std::string>{"--presentation", "Parabola"};
    auto with = [&](std::vector<std::string> a) {
        a.insert(a.end(), pres.begin(), pres.end());
        return a;
    };
    CHECK(pdga_run(with({"dvariety", fx("plane.pdga"), "--section", "tangent"})).code == 0);
    auto inv = pdga_run(with({"dvariety", fx("plane.pdga"), "--section", "skew", "--json"}));
    CHECK(inv.code == 1);
    CHECK(inv.cert()["witnesses"]["residue"] == "2*x - 1");

    CHECK(pdga_run({"dsub", fx("dline.pdga"), "--section", "grow", "--ideal", "Zero"}).code == 0);
    CHECK(pdga_run({"dsub", fx("dline.pdga"), "--section", "grow", "--ideal", "One"}).code == 1);

    auto sh = pdga_run({"sharp", fx("dline.pdga"), "--section", "grow", "--json"});
    CHECK(sh.code == 0);
    CHECK(sh.cert()["witnesses"]["locus"] == json::array({"x"}));
    CHECK(sh.cert()["witnesses"]["points"] == json::array({json::array({"0"})}));
    auto iso = pdga_run(with({"sharp", fx("plane.pdga"), "--section", "still", "--json"}));
    CHECK(iso.cert()["witnesses"]["locus"] == json::array({"x^2 - y"}));
    CHECK(iso.cert()["witnesses"]["points"].is_null());
}

TEST_CASE("counting commands") {
    auto c = pdga_run({"count", fx("plane.pdga"), "--ideal", "Sys", "--x-vars", "x", "--json"});
    CHECK(c.code == 0);
    CHECK(c.cert()["witnesses"]["count"] == 2);
    CHECK(c.cert()["witnesses"]["bound"] == "4");
    CHECK(pdga_run({"count", fx("plane.pdga"), "--ideal", "Flat", "--x-vars", "x"}).code == 1);

    auto m = pdga_run({"minors", fx("plane.pdga"), "--ideal", "Sys", "--x-vars", "x", "--json"});
    CHECK(m.code == 0);
    CHECK(m.cert()["witnesses"]["count"] == 2);
    CHECK(m.cert()["witnesses"]["Y"] == json::array({"y^2 - 1"}));
    CHECK(pdga_run({"minors", fx("plane.pdga"), "--ideal", "X", "--x-vars", "x"}).code == 1);

    auto k = pdga_run({"kronecker", fx("plane.pdga"), "--ideal", "Curves", "--seed", "11", "--json"});
    CHECK(k.code == 0);
    auto decl = load("plane.pdga");
    auto comb = buchberger(decl.ring, polys(decl.ring, k.cert()["witnesses"]["combinations"]));
    for (const auto& f : decl.ideals.at("Curves")) CHECK(radical_member(f, comb));
    auto again = pdga_run({"kronecker", fx("plane.pdga"), "--ideal", "Curves", "--seed", "11", "--json"});
    CHECK(again.cert()["witnesses"] == k.cert()["witnesses"]);

    auto bz = pdga_run({"bezout", fx("plane.pdga"), "--ideal", "Square", "--degree", "2", "--json"});
    CHECK(bz.code == 0);
    CHECK(bz.cert()["witnesses"]["distinct"] == 4);
    CHECK(bz.cert()["witnesses"]["bound"] == "8");
    CHECK(pdga_run({"bezout", fx("plane.pdga"), "--ideal", "X", "--degree", "1"}).code == 1);

    auto ld = pdga_run({"logdiv", fx("line.pdga"), "--space", "V", "--w", "W", "--derivation", "d", "--threads", "2",
                        "--json"});
    CHECK(ld.code == 0);
    CHECK(ld.cert()["witnesses"]["total"] == 1);
    CHECK(ld.cert()["witnesses"]["bound"] == "27");
    auto sus = pdga_run({"logdiv", fx("line.pdga"), "--space", "V2", "--w", "W", "--json"});
    CHECK(sus.code == 1);
    CHECK(sus.cert()["verdict"] == "infinite");
    CHECK_FALSE(sus.cert()["assumptions"].empty());
}

TEST_CASE("Ore commands") {
    auto m = pdga_run({"ore-mul", fx("line.pdga"), "--derivation", "d", "X^2", "a"});
    CHECK(m.code == 0);
    CHECK(m.out.find("a*X^2 + 2*X") != std::string::npos);
    CHECK(pdga_run({"ore-ideal", fx("swap.pdga"), "--derivation", "d", "--ideal", "P"}).code == 0);
    CHECK(pdga_run({"ore-ideal", fx("swap.pdga"), "--derivation", "d", "--ideal", "M"}).code == 2);

    auto g = pdga_run({"gk", fx("line.pdga"), "--derivation", "d", "--n-max", "20", "--json"});
    CHECK(g.code == 0);
    auto dims = g.cert()["witnesses"]["dims"].get<std::vector<std::size_t>>();
    REQUIRE(dims.size() == 20);
    for (std::size_t n = 1; n <= dims.size(); ++n) CHECK(dims[n - 1] == (n + 1) * (n + 2) / 2);
    double est = g.cert()["witnesses"]["estimate"];
    CHECK(est == doctest::Approx(gk_estimate(dims).estimate));
}

TEST_CASE("dimension and points") {
    auto d = pdga_run({"dim", fx("plane.pdga"), "--ideal", "Parabola", "--json"});
    CHECK(d.cert()["witnesses"]["krull_dim"] == 1);
    auto p = pdga_run({"points", fx("plane.pdga"), "--ideal", "Double", "--json"});
    CHECK(p.code == 0);
    CHECK(p.cert()["witnesses"]["distinct"] == 1);
    CHECK(p.cert()["witnesses"]["with_multiplicity"] == 2);
    CHECK(pdga_run({"points", fx("plane.pdga"), "--ideal", "Flat"}).code == 1);
    auto none = pdga_run({"points", fx("plane.pdga"), "--ideal", "Bad", "--json"});
    CHECK(none.cert()["witnesses"]["distinct"] == 0);
}

TEST_CASE("bracket construction commands") {
    CHECK(pdga_run({"tallcheck", fx("weyl.pdga"), "--structure", "B", "--ideal", "Max"}).code == 1);
    auto tall = pdga_run({"tallcheck", fx("affine.pdga"), "--structure", "B", "--ideal", "Tall", "--json"});
    CHECK(tall.code == 0);
    CHECK(tall.cert()["assumptions"] == json::array({"claimed prime"}));

    auto rt = pdga_run({"rt-extend", fx("line.pdga"), "--derivation", "d", "--json"});
    CHECK(rt.code == 0);
    CHECK(rt.cert()["witnesses"]["entries"]["{a, t}"] == "1");
    auto ext = pdga_run({"rt-extend", fx("swap.pdga"), "--derivation", "d", "--ideal", "P", "--json"});
    CHECK(ext.code == 0);
    CHECK(ext.cert()["witnesses"]["extended_is_poisson"] == true);

    auto fd = pdga_run({"from-derivations", fx("weyl.pdga"), "--derivation", "dx", "--derivation", "dy", "--json"});
    CHECK(fd.code == 0);
    CHECK(fd.cert()["witnesses"]["entries"]["{x, y}"] == "1");
    CHECK(pdga_run({"from-derivations", fx("weyl.pdga"), "--derivation", "mixed", "--derivation", "shear"}).code == 1);

    for (std::string s : {"B"}) CHECK(pdga_run({"commutator-check", fx("so3.pdga"), "--structure", s}).code == 0);
    CHECK(pdga_run({"commutator-check", fx("weyl.pdga"), "--structure", "B"}).code == 0);
    CHECK(pdga_run({"commutator-check", fx("weyl.pdga"), "--structure", "Zero"}).code == 0);
    auto broken = pdga_run({"commutator-check", fx("so3.pdga"), "--structure", "Shifted", "--json"});
    CHECK(broken.code == 1);
    CHECK_FALSE(broken.cert()["witnesses"]["residue"] == "0");
}

TEST_CASE("usage errors and aborts") {
    CHECK(pdga_run({"frobnicate", fx("so3.pdga")}).code == 2);
    CHECK(pdga_run({}).code == 2);
    auto parse = pdga_run({"dim", fx("broken.pdga")});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("broken.pdga:2:16") != std::string::npos);
    CHECK(pdga_run({"dim", fx("missing.pdga")}).code == 2);
    CHECK(pdga_run({"dim", fx("plane.pdga"), "--ideal", "Nope"}).code == 2);
    CHECK(pdga_run({"kronecker", fx("plane.pdga"), "--ideal", "Curves"}).code == 2);
    CHECK(pdga_run({"bracket", fx("weyl.pdga"), "--structure", "B", "x +", "y"}).code == 2);

    auto guard = pdga_run({"points", fx("plane.pdga"), "--ideal", "Curves", "--degree-cap", "2", "--json"});
    CHECK(guard.code == 3);
    CHECK(guard.cert()["verdict"] == "aborted");
    CHECK(default_degree_cap() == 64);
    CHECK(pdga_run({"jacobi", "--help"}).code == 0);
}

TEST_CASE("every subcommand is reachable") {
    const std::vector<std::string> all{
        "check-poisson", "bracket", "jacobi", "poisson-ideal", "core", "closure", "constants",
        "const-frac", "prolong", "dvariety", "dsub", "sharp", "count", "minors",
        "kronecker", "bezout", "logdiv", "ore-mul", "ore-ideal", "gk", "dim",
        "points", "tallcheck", "rt-extend", "from-derivations", "commutator-check"};
    CHECK(all.size() == 26);
    for (const auto& c : all) {
        auto r = pdga_run({c, "--help"});
        CHECK_MESSAGE(r.code == 0, c);
    }
}
