#include "pdga/ore.hpp"

#include <cmath>
#include <map>

#include "pdga/linalg.hpp"
#include "pdga/parser.hpp"

namespace pdga {

OrePolynomial::OrePolynomial(Derivation twist, std::vector<Polynomial> coefficients)
    : twist_(std::move(twist)), coeffs_(std::move(coefficients)) {
    const auto& ring = base().ring();
    for (auto& c : coeffs_) c = base().normal_form(c.in_ring(ring));
    trim();
}

OrePolynomial OrePolynomial::constant(Derivation twist, const Polynomial& r) {
    return OrePolynomial(std::move(twist), {r});
}

OrePolynomial OrePolynomial::x(Derivation twist, unsigned power) {
    const auto& ring = twist.algebra().ring();
    std::vector<Polynomial> coeffs(power + 1, Polynomial(ring));
    coeffs[power] = Polynomial::constant(ring, 1);
    return OrePolynomial(std::move(twist), std::move(coeffs));
}

void OrePolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial OrePolynomial::coefficient(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Polynomial(base().ring());
}

void OrePolynomial::require_same_twist(const OrePolynomial& g) const {
    if (!(twist_ == g.twist_)) throw RingMismatch("Ore polynomials with different twists");
}

OrePolynomial& OrePolynomial::operator+=(const OrePolynomial& g) {
    require_same_twist(g);
    if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size(), Polynomial(base().ring()));
    for (std::size_t i = 0; i < g.coeffs_.size(); ++i) coeffs_[i] += g.coeffs_[i];
    trim();
    return *this;
}

OrePolynomial& OrePolynomial::operator-=(const OrePolynomial& g) {
    require_same_twist(g);
    if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size(), Polynomial(base().ring()));
    for (std::size_t i = 0; i < g.coeffs_.size(); ++i) coeffs_[i] -= g.coeffs_[i];
    trim();
    return *this;
}

OrePolynomial operator*(OrePolynomial f, const Rational& c) {
    for (auto& r : f.coeffs_) r *= c;
    f.trim();
    return f;
}

bool operator==(const OrePolynomial& f, const OrePolynomial& g) { return f.twist_ == g.twist_ && f.coeffs_ == g.coeffs_; }

OrePolynomial x_times(const OrePolynomial& g) {
    const auto& delta = g.twist();
    const auto& ring = g.base().ring();
    auto coeffs = g.coefficients();
    std::vector<Polynomial> out(coeffs.size() + 1, Polynomial(ring));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        // x r_i x^i = r_i x^{i+1} + delta(r_i) x^i
        out[i + 1] += coeffs[i];
        out[i] += delta(coeffs[i]);
    }
    return OrePolynomial(delta, std::move(out));
}

OrePolynomial ore_mul(const OrePolynomial& f, const OrePolynomial& g) {
    if (!(f.twist() == g.twist())) throw RingMismatch("Ore polynomials with different twists");
    const auto& algebra = f.base();
    const auto& ring = algebra.ring();
    std::vector<Polynomial> acc;
    OrePolynomial shifted = g;  // x^i * g
    for (std::size_t i = 0; i < f.coefficients().size(); ++i) {
        const Polynomial& r = f.coefficients()[i];
        if (!r.is_zero()) {
            auto sc = shifted.coefficients();
            if (acc.size() < sc.size()) acc.resize(sc.size(), Polynomial(ring));
            for (std::size_t k = 0; k < sc.size(); ++k) acc[k] += r * sc[k];
        }
        if (i + 1 < f.coefficients().size()) shifted = x_times(shifted);
    }
    return OrePolynomial(f.twist(), std::move(acc));
}

OrePolynomial operator*(const OrePolynomial& f, const OrePolynomial& g) { return ore_mul(f, g); }

std::string OrePolynomial::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const auto& r = coeffs_[k];
        if (r.is_zero()) continue;
        std::string power = k == 0 ? "" : k == 1 ? var : var + "^" + std::to_string(k);
        std::string c = pdga::to_string(r);
        std::string piece;
        if (k == 0)
            piece = c;
        else if (c == "1")
            piece = power;
        else if (c == "-1")
            piece = "-" + power;
        else if (r.size() == 1)
            piece = c + "*" + power;
        else
            piece = "(" + c + ")*" + power;
        if (out.empty())
            out = piece;
        else if (piece[0] == '-')
            out += " - " + piece.substr(1);
        else
            out += " + " + piece;
    }
    return out;
}

OrePolynomial parse_ore(std::string_view text, const Derivation& twist, const std::string& var) {
    const auto& ring = twist.algebra().ring();
    if (ring->index_of(var)) throw PreconditionError("Ore variable '" + var + "' clashes with a base variable");
    Ring ext = ring->extended({var});
    auto p = parse_polynomial(text, ext);
    const std::size_t xi = ring->size();
    std::vector<PolynomialBuilder> parts;
    for (const auto& t : p.terms()) {
        std::size_t k = t.monomial[xi];
        while (parts.size() <= k) parts.emplace_back(ring);
        std::vector<Monomial::Exponent> e(t.monomial.exponents().begin(), t.monomial.exponents().end() - 1);
        parts[k].add(Monomial(std::move(e)), t.coefficient);
    }
    std::vector<Polynomial> coeffs;
    for (auto& b : parts) coeffs.push_back(b.build());
    return OrePolynomial(twist, std::move(coeffs));
}

TwoSidedCertificate induced_two_sided(const GroebnerBasis& ideal, const Derivation& twist,
                                      std::span<const std::pair<OrePolynomial, OrePolynomial>> samples) {
    const auto& algebra = twist.algebra();
    const Derivation deltas[] = {twist};
    if (!is_differential_ideal(algebra, ideal, deltas))
        throw PreconditionError("induced_two_sided: ideal is not differential for the twist");
    auto lifted = algebra.lift(ideal);
    TwoSidedCertificate cert;
    auto inside = [&](const OrePolynomial& f) {
        for (const auto& c : f.coefficients())
            if (!lifted.contains(c)) return false;
        return true;
    };
    auto reduce = [&](const OrePolynomial& f) {
        std::vector<Polynomial> cs;
        for (const auto& c : f.coefficients()) cs.push_back(lifted.normal_form(c));
        return OrePolynomial(twist, std::move(cs));
    };
    for (const auto& [f, h] : samples) {
        for (const auto& g : lifted.generators()) {
            auto gg = OrePolynomial::constant(twist, g);
            for (const OrePolynomial* s : {&f, &h}) {
                cert.checks += 2;
                if (!inside(ore_mul(*s, gg)))
                    cert.failures.push_back("(" + s->to_string() + ") * (" + pdga::to_string(g) + ") leaves the ideal");
                if (!inside(ore_mul(gg, *s)))
                    cert.failures.push_back("(" + pdga::to_string(g) + ") * (" + s->to_string() + ") leaves the ideal");
            }
        }
        ++cert.checks;
        if (!(reduce(ore_mul(f, h)) == reduce(ore_mul(reduce(f), reduce(h)))))
            cert.failures.push_back("reduction modulo the ideal does not commute with (" + f.to_string() + ") * (" +
                                    h.to_string() + ")");
    }
    cert.ok = cert.failures.empty();
    return cert;
}

namespace {

using OreKey = std::pair<int, Monomial>;

struct OreKeyLess {
    const VariableRing* ring;
    bool operator()(const OreKey& a, const OreKey& b) const {
        if (a.first != b.first) return a.first < b.first;
        return ring->compare(a.second, b.second) < 0;
    }
};

using OreEchelon = SparseEchelon<OreKey, OreKeyLess>;

OreEchelon::Vector to_vector(const OrePolynomial& f) {
    OreEchelon::Vector v(OreKeyLess{f.base().ring().get()});
    auto cs = f.coefficients();
    for (std::size_t k = 0; k < cs.size(); ++k)
        for (const auto& t : cs[k].terms()) v.emplace(OreKey{static_cast<int>(k), t.monomial}, t.coefficient);
    return v;
}

}  // namespace

std::vector<std::size_t> growth_sequence(std::span<const OrePolynomial> gens, int n_max) {
    if (gens.empty()) throw PreconditionError("growth_sequence: no generators");
    if (n_max < 4) throw PreconditionError("growth_sequence: n_max must be at least 4");
    const auto& twist = gens.front().twist();
    OreEchelon echelon(OreKeyLess{twist.algebra().ring().get()});
    std::vector<OrePolynomial> v;
    for (const auto& g : gens) {
        if (!(g.twist() == twist)) throw RingMismatch("growth_sequence: generators with different twists");
        if (echelon.insert(to_vector(g))) v.push_back(g);
    }
    if (!echelon.contains(to_vector(OrePolynomial::constant(twist, Polynomial::constant(twist.algebra().ring(), 1)))))
        throw PreconditionError("growth_sequence: 1 is not in the generating subspace");

    // V^n = V^{n-1} + (new elements of V^{n-1}) * V, because V^{n-2} * V = V^{n-1}.
    std::vector<std::size_t> dims{echelon.dimension()};
    std::vector<OrePolynomial> fresh = v;
    for (int n = 2; n <= n_max; ++n) {
        std::vector<OrePolynomial> next;
        for (const auto& b : fresh)
            for (const auto& g : v) {
                auto p = ore_mul(b, g);
                if (echelon.insert(to_vector(p))) next.push_back(std::move(p));
            }
        dims.push_back(echelon.dimension());
        fresh = std::move(next);
    }
    return dims;
}

GkEstimate gk_estimate(std::span<const std::size_t> dims, double fit_window) {
    if (!(fit_window > 0 && fit_window <= 1)) throw PreconditionError("gk_estimate: window must lie in (0, 1]");
    const std::size_t len = dims.size();
    const auto k = static_cast<std::size_t>(std::ceil(fit_window * static_cast<double>(len)));
    if (k < 3) throw PreconditionError("gk_estimate: fit window holds fewer than 3 points");
    std::vector<double> xs, ys;
    for (std::size_t i = len - k; i < len; ++i) {
        if (dims[i] == 0) throw PreconditionError("gk_estimate: zero dimension in sequence");
        xs.push_back(std::log(static_cast<double>(i + 1)));
        ys.push_back(std::log(static_cast<double>(dims[i])));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    GkEstimate out;
    out.points = k;
    out.estimate = sxx > 0 ? sxy / sxx : 0.0;
    double intercept = my - out.estimate * mx;
    double ss = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double r = ys[i] - (intercept + out.estimate * xs[i]);
        ss += r * r;
    }
    out.residual = std::sqrt(ss / static_cast<double>(k));
    return out;
}

}  // namespace pdga
