#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdga/pdga.hpp"

namespace pdga::cli {
namespace {

using json = nlohmann::json;

/// Bad flags, unknown declaration names and the like; exit code 2.
struct UsageError : Error {
    using Error::Error;
};

struct Options {
    std::string file;
    bool json = false;
    unsigned threads = 1;
    int degree_cap = 64;
    bool domain = false;
    std::string presentation;
    std::string structure;
    std::string ideal;
    std::string section;
    std::string space;
    std::string w_space;
    std::string t_name = "t";
    std::vector<std::string> derivations;
    std::vector<std::string> family;
    std::vector<std::string> x_vars;
    std::vector<std::string> exprs;
    std::uint64_t seed = 0;
    int max_retries = 5;
    int max_iter = 10;
    int degree = 1;
    int n_max = 30;
    double window = 0.5;
};

struct Report {
    std::string verdict;
    json witnesses = json::object();
    std::vector<std::string> assumptions;
    /// Human-readable verdict when it differs from the JSON one.
    std::string label;
    std::optional<int> exit;
};

int exit_for(const std::string& verdict) {
    if (verdict == "true" || verdict == "found" || verdict == "finite") return affirmative;
    if (verdict == "aborted") return aborted;
    return negative;
}

std::string rational(const Rational& q) { return q.get_str(); }

json strings(std::span<const Polynomial> ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(to_string(p));
    return out;
}

json strings(const GroebnerBasis& gb) { return strings(gb.generators()); }

/// Declarations plus everything the subcommands derive from them.
class Input {
public:
    explicit Input(const Options& o) : o_(o) {
        std::ifstream in(o.file, std::ios::binary);
        if (!in) throw UsageError("cannot read " + o.file);
        std::stringstream buf;
        buf << in.rdbuf();
        text_ = buf.str();
        try {
            decl_ = parse_declarations(text_);
        } catch (const ParseError& e) {
            auto [line, col] = line_col(text_, e.offset());
            throw UsageError(o.file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.message());
        }
        opts_.degree_cap = o.degree_cap;
    }

    const Ring& ring() const { return decl_.ring; }
    const GroebnerOptions& opts() const { return opts_; }

    PresentedAlgebra algebra() const {
        if (o_.presentation.empty()) return PresentedAlgebra::polynomial_ring(ring(), o_.domain);
        return PresentedAlgebra(ring(), list(o_.presentation), o_.domain, opts_);
    }

    const std::vector<Polynomial>& list(const std::string& name) const {
        auto it = decl_.ideals.find(name);
        if (it == decl_.ideals.end()) throw UsageError("no ideal named '" + name + "'");
        return it->second;
    }

    GroebnerBasis ideal(const PresentedAlgebra& a, const std::string& name) const { return a.ideal(list(name), opts_); }

    PoissonStructure structure(const PresentedAlgebra& a, bool checked) const {
        if (o_.structure.empty()) throw UsageError("--structure is required");
        auto it = decl_.poisson.find(o_.structure);
        if (it == decl_.poisson.end()) throw UsageError("no poisson structure named '" + o_.structure + "'");
        return checked ? PoissonStructure::make(a, it->second) : PoissonStructure::unchecked(a, it->second);
    }

    Derivation derivation(const PresentedAlgebra& a, const std::string& name) const {
        auto it = decl_.derivations.find(name);
        if (it == decl_.derivations.end()) throw UsageError("no derivation named '" + name + "'");
        return Derivation(a, it->second);
    }

    /// Induced derivations of --structure followed by every --derivation.
    std::vector<Derivation> deltas(const PresentedAlgebra& a) const {
        std::vector<Derivation> out;
        if (!o_.structure.empty()) out = induced_derivations(structure(a, true));
        for (const auto& name : o_.derivations) out.push_back(derivation(a, name));
        return out;
    }

    Derivation twist(const PresentedAlgebra& a) const {
        if (o_.derivations.size() != 1) throw UsageError("exactly one --derivation is required");
        return derivation(a, o_.derivations.front());
    }

    std::vector<Polynomial> section(const std::string& name) const {
        auto it = decl_.sections.find(name);
        if (it == decl_.sections.end()) throw UsageError("no section named '" + name + "'");
        return it->second;
    }

    Polynomial expr(std::size_t i) const {
        if (i >= o_.exprs.size()) throw UsageError("missing polynomial argument " + std::to_string(i + 1));
        try {
            return parse_polynomial(o_.exprs[i], ring());
        } catch (const ParseError& e) {
            throw UsageError("argument '" + o_.exprs[i] + "': " + e.what());
        }
    }

    std::string var(std::size_t i) const { return ring()->names()[i]; }

    json entries(const PoissonStructure& b) const {
        json out = json::object();
        for (const auto& [ij, p] : b.entries())
            if (!p.is_zero()) out["{" + var(ij.first) + ", " + var(ij.second) + "}"] = to_string(p);
        return out;
    }

private:
    const Options& o_;
    std::string text_;
    Declarations decl_;
    GroebnerOptions opts_;
};

std::vector<std::string> domain_assumption(const PresentedAlgebra& a) {
    if (a.domain_claim()) return {"domain_claim"};
    return {};
}

// ---- subcommands ----------------------------------------------------------

Report check_poisson(const Options&, const Input& in) {
    auto a = in.algebra();
    auto b = in.structure(a, false);
    Report r;
    r.witnesses["entries"] = in.entries(b);
    if (auto w = jacobi_witness(b)) {
        r.verdict = "false";
        r.witnesses["jacobi"] = {{"triple", {in.var(w->i), in.var(w->j), in.var(w->k)}},
                                 {"jacobiator", to_string(w->jacobiator)}};
    } else if (auto p = presentation_witness(b)) {
        r.verdict = "false";
        r.witnesses["presentation"] = {
            {"generator", to_string(p->first)},
            {"variable", in.var(p->second)},
            {"bracket", to_string(bracket(b, p->first, Polynomial::variable(a.ring(), p->second)))}};
    } else {
        r.verdict = "true";
    }
    r.label = r.verdict == "true" ? "validated" : "rejected";
    return r;
}

Report jacobi(const Options&, const Input& in) {
    auto a = in.algebra();
    auto b = in.structure(a, false);
    Report r;
    if (auto w = jacobi_witness(b)) {
        r.verdict = "false";
        r.witnesses["triple"] = {in.var(w->i), in.var(w->j), in.var(w->k)};
        r.witnesses["jacobiator"] = to_string(w->jacobiator);
    } else {
        r.verdict = "true";
    }
    r.label = r.verdict == "true" ? "validated" : "rejected";
    r.assumptions.push_back("Jacobi checked on generator triples");
    return r;
}

Report bracket_cmd(const Options&, const Input& in) {
    auto a = in.algebra();
    auto b = in.structure(a, false);
    Report r;
    r.verdict = "true";
    r.witnesses["result"] = to_string(bracket(b, in.expr(0), in.expr(1)));
    if (jacobi_witness(b)) r.assumptions.push_back("structure fails the Jacobi identity");
    return r;
}

Report poisson_ideal(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto b = in.structure(a, true);
    auto j = in.ideal(a, o.ideal);
    Report r;
    r.witnesses["ideal"] = strings(j);
    r.verdict = is_poisson_ideal(b, j) ? "true" : "false";
    if (r.verdict == "false") {
        auto ds = induced_derivations(b);
        if (auto w = differential_witness(a, j, ds))
            r.witnesses["escape"] = {{"generator", to_string(w->generator)},
                                     {"variable", in.var(w->derivation)},
                                     {"bracket", to_string(w->image)}};
    }
    return r;
}

Report core(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto ds = in.deltas(a);
    auto rep = differential_core_descent(a, in.ideal(a, o.ideal), ds, o.max_iter, in.opts());
    Report r;
    json chain = json::array();
    for (const auto& j : rep.chain) chain.push_back(strings(j));
    r.witnesses["chain"] = chain;
    r.witnesses["iterations"] = rep.iterations;
    r.witnesses["stabilized"] = rep.stabilized;
    r.witnesses["drop_witnesses"] = strings(rep.drop_witnesses);
    r.witnesses["core"] = strings(rep.last());
    r.verdict = rep.stabilized ? "true" : "false";
    r.label = rep.stabilized ? "stabilized" : "not stabilized";
    // A bounded chain is a valid upper-bound certificate, not a failure.
    r.exit = affirmative;
    if (!rep.stabilized) r.assumptions.push_back("chain entries bound the core from above");
    return r;
}

Report closure(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto rep = differential_closure(a, in.list(o.ideal), in.deltas(a), in.opts());
    Report r;
    r.verdict = "found";
    r.witnesses["ideal"] = strings(rep.ideal);
    r.witnesses["rounds"] = rep.rounds;
    return r;
}

Report constants(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto v = Subspace::span(a, in.list(o.space));
    std::vector<GroebnerBasis> family;
    for (const auto& name : o.family) family.push_back(in.ideal(a, name));
    auto res = constants_search(v, family, in.deltas(a), in.opts());
    Report r;
    r.assumptions = domain_assumption(a);
    if (auto c = std::get_if<Constant>(&res)) {
        r.verdict = "found";
        r.witnesses["numerator"] = to_string(c->numerator);
        r.witnesses["denominator"] = to_string(c->denominator);
    } else {
        r.verdict = "not-found";
        r.witnesses["reason"] = std::get<NotFound>(res).reason;
    }
    return r;
}

Report const_frac(const Options&, const Input& in) {
    auto a = in.algebra();
    Report r;
    r.assumptions = domain_assumption(a);
    r.verdict = is_constant_fraction(a, in.expr(0), in.expr(1), in.deltas(a)) ? "true" : "false";
    return r;
}

Report prolong(const Options& o, const Input& in) {
    auto tau = prolongation_ideal(buchberger(in.ring(), in.list(o.ideal), in.opts()), in.opts());
    Report r;
    r.verdict = "found";
    r.witnesses["ring"] = tau.ring()->names();
    r.witnesses["ideal"] = strings(tau);
    return r;
}

Report dvariety(const Options& o, const Input& in) {
    auto a = in.algebra();
    Report r;
    try {
        auto dv = make_dvariety(a, in.section(o.section), in.opts());
        r.verdict = "true";
        r.witnesses["section"] = strings(dv.section());
    } catch (const InvalidSection& e) {
        r.verdict = "false";
        r.witnesses["generator"] = e.generator();
        r.witnesses["residue"] = e.residue();
    }
    return r;
}

Report dsub(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto dv = make_dvariety(a, in.section(o.section), in.opts());
    auto w = in.ideal(a, o.ideal);
    Report r;
    r.witnesses["ideal"] = strings(w);
    r.verdict = is_d_subvariety(dv, w) ? "true" : "false";
    if (r.verdict == "false") {
        const Derivation ds[] = {dv.induced()};
        if (auto x = differential_witness(a, w, ds))
            r.witnesses["escape"] = {{"generator", to_string(x->generator)}, {"image", to_string(x->image)}};
    }
    return r;
}

Report sharp(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto locus = constant_sharp_points(make_dvariety(a, in.section(o.section), in.opts()), in.opts());
    Report r;
    r.verdict = "found";
    r.witnesses["locus"] = strings(locus.ideal);
    if (locus.points) {
        json pts = json::array();
        for (const auto& p : *locus.points) {
            json pt = json::array();
            for (const auto& c : p) pt.push_back(rational(c));
            pts.push_back(pt);
        }
        r.witnesses["points"] = pts;
    } else {
        r.witnesses["points"] = nullptr;
    }
    return r;
}

LinearParamSystem system(const Options& o, const Input& in) {
    if (o.x_vars.empty()) throw UsageError("--x-vars is required");
    return LinearParamSystem::from_polynomials(in.ring(), o.x_vars, in.list(o.ideal));
}

Report count(const Options& o, const Input& in) {
    auto sys = system(o, in);
    auto sc = count_or_infinite(sys, in.opts());
    Report r;
    r.witnesses["n"] = sys.n();
    r.witnesses["d"] = sys.d();
    r.witnesses["N"] = sys.degree_cap();
    r.witnesses["bound"] = sc.bound.get_str();
    if (sc.finite) {
        r.verdict = "finite";
        r.witnesses["count"] = sc.count;
        r.witnesses["with_multiplicity"] = sc.with_multiplicity;
    } else {
        r.verdict = "infinite";
    }
    return r;
}

Report minors(const Options& o, const Input& in) {
    auto sys = system(o, in);
    auto res = minors_decomposition(sys, in.opts());
    Report r;
    if (auto na = std::get_if<NotApplicable>(&res)) {
        r.verdict = "not-applicable";
        r.witnesses["reason"] = na->reason;
        return r;
    }
    const auto& md = std::get<MinorsDecomposition>(res);
    r.witnesses["Y"] = strings(md.y_ideal);
    r.witnesses["Z"] = strings(md.z_ideal);
    if (auto c = minors_point_count(md, in.opts())) {
        r.verdict = "finite";
        r.witnesses["count"] = *c;
    } else {
        r.verdict = "not-applicable";
        r.witnesses["reason"] = "Y is not zero-dimensional";
    }
    return r;
}

Report kronecker(const Options& o, const Input& in) {
    KroneckerOptions ko;
    ko.max_retries = o.max_retries;
    ko.groebner = in.opts();
    auto res = kronecker_reduce(in.list(o.ideal), o.seed, ko);
    Report r;
    r.verdict = res.verified ? "true" : "false";
    r.witnesses["combinations"] = strings(res.combinations);
    json coeffs = json::array();
    for (const auto& row : res.coefficients) {
        json c = json::array();
        for (const auto& z : row) c.push_back(z.get_str());
        coeffs.push_back(c);
    }
    r.witnesses["coefficients"] = coeffs;
    r.witnesses["retries"] = res.retries;
    r.witnesses["seed"] = o.seed;
    if (!res.verified) r.witnesses["outside_radical"] = strings(res.witnesses);
    return r;
}

Report bezout(const Options& o, const Input& in) {
    auto res = bezout_check(in.ring(), in.list(o.ideal), o.degree, in.opts());
    Report r;
    if (auto na = std::get_if<NotApplicable>(&res)) {
        r.verdict = "not-applicable";
        r.witnesses["reason"] = na->reason;
        return r;
    }
    const auto& b = std::get<BezoutResult>(res);
    r.verdict = b.ok ? "true" : "false";
    r.witnesses["distinct"] = b.distinct;
    r.witnesses["bound"] = b.bound.get_str();
    return r;
}

Report logdiv(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto v = Subspace::span(a, in.list(o.space));
    auto w = o.w_space.empty() ? Subspace::span(a, std::vector<Polynomial>{}) : Subspace::span(a, in.list(o.w_space));
    auto res = logdiv_count(v, w, in.deltas(a), o.threads, in.opts());
    Report r;
    r.witnesses["chart_counts"] = res.chart_counts;
    r.witnesses["total"] = res.total;
    r.witnesses["bound"] = res.bound.get_str();
    r.witnesses["ambient_dimension"] = res.ambient_dimension;
    if (res.uncountable_suspect) {
        r.verdict = "infinite";
        r.witnesses["suspect_chart"] = *res.suspect_chart;
        r.assumptions.push_back("uncountability inferred from a positive-dimensional chart");
    } else {
        r.verdict = res.ok ? "finite" : "false";
    }
    return r;
}

Report ore_mul_cmd(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto d = in.twist(a);
    if (o.exprs.size() != 2) throw UsageError("ore-mul takes two operands");
    Report r;
    r.verdict = "true";
    r.witnesses["product"] = ore_mul(parse_ore(o.exprs[0], d), parse_ore(o.exprs[1], d)).to_string();
    return r;
}

Report ore_ideal(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto d = in.twist(a);
    // Fixed sample set: powers of X against each base variable.
    std::vector<std::pair<OrePolynomial, OrePolynomial>> samples;
    samples.emplace_back(OrePolynomial::x(d, 1), OrePolynomial::x(d, 2));
    for (std::size_t i = 0; i < in.ring()->size(); ++i) {
        auto v = Polynomial::variable(in.ring(), i);
        auto vx = OrePolynomial(d, {Polynomial(in.ring()), v});
        samples.emplace_back(OrePolynomial::x(d, 2), vx + OrePolynomial::constant(d, v * v));
        samples.emplace_back(vx, OrePolynomial::x(d, 3));
    }
    auto cert = induced_two_sided(in.ideal(a, o.ideal), d, samples);
    Report r;
    r.verdict = cert.ok ? "true" : "false";
    r.witnesses["checks"] = cert.checks;
    r.witnesses["failures"] = cert.failures;
    return r;
}

Report gk(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto d = o.derivations.empty() ? Derivation::zero(a) : in.twist(a);
    std::vector<OrePolynomial> gens;
    if (o.exprs.empty()) {
        gens.push_back(OrePolynomial::constant(d, Polynomial::constant(in.ring(), 1)));
        for (std::size_t i = 0; i < in.ring()->size(); ++i)
            gens.push_back(OrePolynomial::constant(d, Polynomial::variable(in.ring(), i)));
        if (!o.derivations.empty()) gens.push_back(OrePolynomial::x(d));
    } else {
        for (const auto& e : o.exprs) gens.push_back(parse_ore(e, d));
    }
    auto dims = growth_sequence(gens, o.n_max);
    auto est = gk_estimate(dims, o.window);
    Report r;
    r.verdict = "true";
    r.witnesses["dims"] = dims;
    r.witnesses["estimate"] = est.estimate;
    r.witnesses["residual"] = est.residual;
    r.witnesses["points"] = est.points;
    r.assumptions.push_back("estimate from a finite tail window");
    return r;
}

Report dim(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto j = o.ideal.empty() ? a.presentation() : in.ideal(a, o.ideal);
    Report r;
    if (j.is_unit()) {
        r.verdict = "not-applicable";
        r.witnesses["reason"] = "unit ideal";
        return r;
    }
    r.verdict = "true";
    r.witnesses["krull_dim"] = krull_dim(j);
    return r;
}

Report points(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto j = o.ideal.empty() ? a.presentation() : in.ideal(a, o.ideal);
    Report r;
    if (!j.is_unit() && krull_dim(j) > 0) {
        r.verdict = "infinite";
        r.witnesses["krull_dim"] = krull_dim(j);
        return r;
    }
    auto c = count_points(j, in.opts());
    r.verdict = "finite";
    r.witnesses["distinct"] = c.distinct;
    r.witnesses["with_multiplicity"] = c.with_multiplicity;
    if (auto pts = j.is_unit() ? std::optional<std::vector<std::vector<Rational>>>{std::vector<std::vector<Rational>>{}}
                               : rational_points(j)) {
        json out = json::array();
        for (const auto& p : *pts) {
            json pt = json::array();
            for (const auto& q : p) pt.push_back(rational(q));
            out.push_back(pt);
        }
        r.witnesses["rational_points"] = out;
    }
    return r;
}

Report tallcheck(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto b = in.structure(a, true);
    Report r;
    r.assumptions.push_back("claimed prime");
    r.verdict = tall_prime_bracket_check(b, in.ideal(a, o.ideal)) ? "true" : "false";
    return r;
}

Report rt_extend(const Options& o, const Input& in) {
    auto a = in.algebra();
    auto b = rt_extension(in.twist(a), o.t_name);
    Report r;
    r.witnesses["ring"] = b.algebra().ring()->names();
    json entries = json::object();
    const auto& names = b.algebra().ring()->names();
    for (const auto& [ij, p] : b.entries())
        if (!p.is_zero()) entries["{" + names[ij.first] + ", " + names[ij.second] + "}"] = to_string(p);
    r.witnesses["entries"] = entries;
    r.verdict = b.validated() ? "true" : "false";
    if (!o.ideal.empty()) {
        auto ext = extend_ideal(in.ideal(a, o.ideal), b.algebra().ring(), in.opts());
        r.witnesses["extended_ideal"] = strings(ext);
        r.witnesses["extended_is_poisson"] = is_poisson_ideal(b, ext);
        if (!is_poisson_ideal(b, ext)) r.verdict = "false";
    }
    return r;
}

Report from_derivations(const Options& o, const Input& in) {
    auto a = in.algebra();
    if (o.derivations.size() != 2) throw UsageError("from-derivations takes exactly two --derivation names");
    Report r;
    try {
        auto b = from_commuting_derivations(in.derivation(a, o.derivations[0]), in.derivation(a, o.derivations[1]));
        r.verdict = "true";
        r.witnesses["entries"] = in.entries(b);
    } catch (const NonCommuting& e) {
        r.verdict = "false";
        r.witnesses["variable"] = e.variable();
        r.witnesses["commutator"] = e.residue();
    }
    return r;
}

Report commutator_check(const Options&, const Input& in) {
    auto a = in.algebra();
    auto b = in.structure(a, false);
    Report r;
    r.witnesses["jacobi_holds"] = !jacobi_witness(b).has_value();
    if (auto w = commutator_identity_check(b)) {
        r.verdict = "false";
        r.witnesses["pair"] = {in.var(w->i), in.var(w->j)};
        r.witnesses["generator"] = in.var(w->l);
        r.witnesses["residue"] = to_string(w->residue);
    } else {
        r.verdict = "true";
    }
    return r;
}

// ---- output ---------------------------------------------------------------

std::string render(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); })) {
        std::string out = "{";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].get<std::string>();
        return out + "}";
    }
    return v.dump();
}

void print(std::ostream& out, const std::string& command, const Report& r, double ms, bool as_json) {
    if (as_json) {
        json j;
        j["command"] = command;
        j["verdict"] = r.verdict;
        j["witnesses"] = r.witnesses;
        j["assumptions"] = r.assumptions;
        j["timings_ms"] = ms;
        out << j.dump(2) << "\n";
        return;
    }
    out << command << ": " << (r.label.empty() ? r.verdict : r.label) << "\n";
    for (const auto& [k, v] : r.witnesses.items()) {
        if (k == "chain") {
            for (std::size_t i = 0; i < v.size(); ++i) out << "  J" << i << " = " << render(v[i]) << "\n";
            continue;
        }
        out << "  " << k << ": " << render(v) << "\n";
    }
    for (const auto& a : r.assumptions) out << "  assumes: " << a << "\n";
}

struct Command {
    std::string name;
    std::string help;
    std::function<Report(const Options&, const Input&)> fn;
    std::function<void(CLI::App&, Options&)> flags;
};

void add_structure(CLI::App& s, Options& o, bool required) {
    auto* opt = s.add_option("--structure", o.structure, "poisson declaration");
    if (required) opt->required();
}
void add_ideal(CLI::App& s, Options& o, bool required = true) {
    auto* opt = s.add_option("--ideal", o.ideal, "ideal declaration");
    if (required) opt->required();
}
void add_deltas(CLI::App& s, Options& o) {
    s.add_option("--derivation", o.derivations, "derivation declaration (repeatable)")->allow_extra_args(false);
    s.add_option("--structure", o.structure, "use the derivations induced by this poisson structure");
}
void add_exprs(CLI::App& s, Options& o, const std::string& what) { s.add_option("exprs", o.exprs, what); }

std::vector<Command> commands() {
    return {
        {"check-poisson", "validate a Poisson structure", check_poisson,
         [](CLI::App& s, Options& o) { add_structure(s, o, true); }},
        {"bracket", "evaluate {f, g}", bracket_cmd,
         [](CLI::App& s, Options& o) {
             add_structure(s, o, true);
             add_exprs(s, o, "f g");
         }},
        {"jacobi", "check the Jacobi identity on generator triples", jacobi,
         [](CLI::App& s, Options& o) { add_structure(s, o, true); }},
        {"poisson-ideal", "decide whether an ideal is Poisson", poisson_ideal,
         [](CLI::App& s, Options& o) {
             add_structure(s, o, true);
             add_ideal(s, o);
         }},
        {"core", "descend towards the differential core", core,
         [](CLI::App& s, Options& o) {
             add_deltas(s, o);
             add_ideal(s, o);
             s.add_option("--max-iter", o.max_iter, "iteration cap")->check(CLI::PositiveNumber);
         }},
        {"closure", "smallest differential ideal containing the generators", closure,
         [](CLI::App& s, Options& o) {
             add_deltas(s, o);
             add_ideal(s, o);
         }},
        {"constants", "search for a nonconstant fraction killed by the derivations", constants,
         [](CLI::App& s, Options& o) {
             add_deltas(s, o);
             s.add_option("--space", o.space, "spanning elements, given as an ideal declaration")->required();
             s.add_option("--family", o.family, "ideal declarations forming the family (repeatable)")->allow_extra_args(false);
         }},
        {"const-frac", "decide whether a/b is a constant fraction", const_frac,
         [](CLI::App& s, Options& o) {
             add_deltas(s, o);
             add_exprs(s, o, "a b");
         }},
        {"prolong", "prolongation ideal", prolong, [](CLI::App& s, Options& o) { add_ideal(s, o); }},
        {"dvariety", "validate a section", dvariety,
         [](CLI::App& s, Options& o) { s.add_option("--section", o.section, "section declaration")->required(); }},
        {"dsub", "decide whether an ideal cuts out a D-subvariety", dsub,
         [](CLI::App& s, Options& o) {
             s.add_option("--section", o.section, "section declaration")->required();
             add_ideal(s, o);
         }},
        {"sharp", "constant sharp points of a section", sharp,
         [](CLI::App& s, Options& o) { s.add_option("--section", o.section, "section declaration")->required(); }},
        {"count", "count solutions of a parametrized linear system", count,
         [](CLI::App& s, Options& o) {
             add_ideal(s, o);
             s.add_option("--x-vars", o.x_vars, "linear variables")->delimiter(',')->required()->allow_extra_args(false);
         }},
        {"minors", "minors decomposition of a parametrized linear system", minors,
         [](CLI::App& s, Options& o) {
             add_ideal(s, o);
             s.add_option("--x-vars", o.x_vars, "linear variables")->delimiter(',')->required()->allow_extra_args(false);
         }},
        {"kronecker", "reduce to d+1 combinations with the same zero set", kronecker,
         [](CLI::App& s, Options& o) {
             add_ideal(s, o);
             s.add_option("--seed", o.seed, "random seed")->required();
             s.add_option("--max-retries", o.max_retries, "retry cap");
         }},
        {"bezout", "check the N^(d+1) bound on isolated points", bezout,
         [](CLI::App& s, Options& o) {
             add_ideal(s, o);
             s.add_option("--degree", o.degree, "degree bound N")->required();
         }},
        {"logdiv", "count f in P(V) with L(f)/f in W", logdiv,
         [](CLI::App& s, Options& o) {
             s.add_option("--derivation", o.derivations, "derivation declaration (repeatable)")->allow_extra_args(false);
             s.add_option("--space", o.space, "basis of V, as an ideal declaration")->required();
             s.add_option("--w", o.w_space, "basis of W, as an ideal declaration (default {0})");
         }},
        {"ore-mul", "multiply in R[X; d]", ore_mul_cmd,
         [](CLI::App& s, Options& o) {
             s.add_option("--derivation", o.derivations, "twist")->required()->allow_extra_args(false);
             add_exprs(s, o, "f g, written as polynomials in X");
         }},
        {"ore-ideal", "certify that an extended differential ideal is two-sided", ore_ideal,
         [](CLI::App& s, Options& o) {
             s.add_option("--derivation", o.derivations, "twist")->required()->allow_extra_args(false);
             add_ideal(s, o);
         }},
        {"gk", "growth sequence and GK dimension estimate", gk,
         [](CLI::App& s, Options& o) {
             s.add_option("--derivation", o.derivations, "twist (omit for the commutative algebra)")->allow_extra_args(false);
             s.add_option("--n-max", o.n_max, "largest power")->check(CLI::Range(4, 1000));
             s.add_option("--window", o.window, "tail fraction used by the fit");
             add_exprs(s, o, "generators, written as polynomials in X (default 1, variables, X)");
         }},
        {"dim", "Krull dimension", dim, [](CLI::App& s, Options& o) { add_ideal(s, o, false); }},
        {"points", "point counts of a zero-dimensional ideal", points,
         [](CLI::App& s, Options& o) { add_ideal(s, o, false); }},
        {"tallcheck", "check that a tall prime contains every bracket", tallcheck,
         [](CLI::App& s, Options& o) {
             add_structure(s, o, true);
             add_ideal(s, o);
         }},
        {"rt-extend", "Poisson structure on R[t] from a derivation", rt_extend,
         [](CLI::App& s, Options& o) {
             s.add_option("--derivation", o.derivations, "derivation of R")->required()->allow_extra_args(false);
             s.add_option("--t", o.t_name, "name of the new variable");
             add_ideal(s, o, false);
         }},
        {"from-derivations", "bracket d1(r)d2(s) - d2(r)d1(s)", from_derivations,
         [](CLI::App& s, Options& o) { s.add_option("--derivation", o.derivations, "two derivations")->required()->allow_extra_args(false); }},
        {"commutator-check", "check [d_i, d_j] = sum dp_ij/dx_k d_k", commutator_check,
         [](CLI::App& s, Options& o) { add_structure(s, o, true); }},
    };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Poisson and differential algebra toolkit", "pdga"};
    app.require_subcommand(1);
    Options o;
    auto cmds = commands();
    std::map<CLI::App*, const Command*> by_app;
    for (const auto& c : cmds) {
        auto* s = app.add_subcommand(c.name, c.help);
        s->add_option("file", o.file, "declarations file")->required();
        s->add_flag("--json", o.json, "print a JSON certificate");
        s->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        s->add_option("--degree-cap", o.degree_cap, "Groebner degree guard")->check(CLI::PositiveNumber);
        s->add_flag("--domain", o.domain, "assert that the algebra is a domain");
        s->add_option("--presentation", o.presentation, "ideal declaration presenting the algebra");
        c.flags(*s, o);
        by_app[s] = &c;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return affirmative;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return affirmative;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }
    const Command* cmd = nullptr;
    for (auto* s : app.get_subcommands()) cmd = by_app.at(s);

    const int saved_cap = default_degree_cap();
    set_default_degree_cap(o.degree_cap);
    struct Restore {
        int cap;
        ~Restore() { set_default_degree_cap(cap); }
    } restore{saved_cap};

    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    auto abort_with = [&](const std::string& what) {
        if (o.json) {
            Report r;
            r.verdict = "aborted";
            r.witnesses["error"] = what;
            print(out, cmd->name, r, elapsed(), true);
        }
        err << "pdga " << cmd->name << ": aborted: " << what << "\n";
        return static_cast<int>(aborted);
    };
    try {
        Input in(o);
        Report r = cmd->fn(o, in);
        print(out, cmd->name, r, elapsed(), o.json);
        return r.exit.value_or(exit_for(r.verdict));
    } catch (const DegreeGuardExceeded& e) {
        return abort_with(e.what());
    } catch (const InternalInconsistency& e) {
        return abort_with(e.what());
    } catch (const Error& e) {
        err << "pdga " << cmd->name << ": " << e.what() << "\n";
        return usage;
    }
}

}  // namespace pdga::cli
