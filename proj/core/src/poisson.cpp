#include "pdga/poisson.hpp"

#include <map>

#include "pdga/parser.hpp"

namespace pdga {

PoissonStructure::PoissonStructure(PresentedAlgebra algebra, const StructureEntries& entries)
    : algebra_(std::move(algebra)), n_(algebra_.ring()->size()) {
    const auto& ring = algebra_.ring();
    matrix_.assign(n_ * n_, Polynomial(ring));
    for (const auto& [key, value] : entries) {
        auto [i, j] = key;
        if (i >= n_ || j >= n_) throw PreconditionError("structure entry index out of range");
        if (i == j) {
            if (!value.is_zero()) throw PreconditionError("structure entry {x, x} must be zero");
            continue;
        }
        auto v = algebra_.normal_form(value.in_ring(ring));
        matrix_[i * n_ + j] = i < j ? v : -v;
        matrix_[j * n_ + i] = i < j ? -v : v;
    }
}

PoissonStructure PoissonStructure::unchecked(PresentedAlgebra algebra, const StructureEntries& entries) {
    return PoissonStructure(std::move(algebra), entries);
}

PoissonStructure PoissonStructure::make(PresentedAlgebra algebra, const StructureEntries& entries) {
    PoissonStructure b(std::move(algebra), entries);
    const auto& names = b.algebra_.ring()->names();
    if (auto w = jacobi_witness(b))
        throw JacobiViolation({names[w->i], names[w->j], names[w->k]}, to_string(w->jacobiator));
    if (auto w = presentation_witness(b))
        throw PresentationNotPoisson(to_string(w->first), names[w->second],
                                     to_string(bracket(b, w->first, Polynomial::variable(b.algebra_.ring(), w->second))));
    b.validated_ = true;
    return b;
}

StructureEntries PoissonStructure::entries() const {
    StructureEntries out;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) out.emplace(std::make_pair(i, j), entry(i, j));
    return out;
}

Polynomial bracket(const PoissonStructure& b, const Polynomial& f, const Polynomial& g) {
    const auto& algebra = b.algebra();
    const auto& ring = algebra.ring();
    if (!same_ring(f.ring(), ring) || !same_ring(g.ring(), ring)) throw RingMismatch("bracket: ring mismatch");
    const std::size_t n = b.size();
    std::vector<Polynomial> df, dg;
    for (std::size_t i = 0; i < n; ++i) {
        df.push_back(partial_derivative(f, i));
        dg.push_back(partial_derivative(g, i));
    }
    Polynomial acc(ring);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& p = b.entry(i, j);
            if (p.is_zero()) continue;
            auto cross = df[i] * dg[j] - df[j] * dg[i];
            if (!cross.is_zero()) acc += p * cross;
        }
    return algebra.normal_form(acc);
}

std::optional<JacobiWitness> jacobi_witness(const PoissonStructure& b) {
    const auto& ring = b.algebra().ring();
    const std::size_t n = b.size();
    auto x = [&](std::size_t i) { return Polynomial::variable(ring, i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                auto jac = bracket(b, x(i), b.entry(j, k)) + bracket(b, x(k), b.entry(i, j)) +
                           bracket(b, x(j), b.entry(k, i));
                jac = b.algebra().normal_form(jac);
                if (!jac.is_zero()) return JacobiWitness{i, j, k, std::move(jac)};
            }
    return std::nullopt;
}

std::optional<std::pair<Polynomial, std::size_t>> presentation_witness(const PoissonStructure& b) {
    const auto& algebra = b.algebra();
    for (const auto& g : algebra.presentation().generators())
        for (std::size_t i = 0; i < b.size(); ++i)
            if (!bracket(b, g, Polynomial::variable(algebra.ring(), i)).is_zero()) return std::make_pair(g, i);
    return std::nullopt;
}

std::vector<Derivation> induced_derivations(const PoissonStructure& b) {
    std::vector<Derivation> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::vector<Polynomial> images;
        for (std::size_t j = 0; j < b.size(); ++j) images.push_back(b.entry(j, i));
        out.push_back(b.validated() ? Derivation(b.algebra(), std::move(images))
                                    : Derivation::unchecked(b.algebra(), std::move(images)));
    }
    return out;
}

bool is_poisson_ideal(const PoissonStructure& b, const GroebnerBasis& ideal) {
    const auto& algebra = b.algebra();
    auto lifted = algebra.lift(ideal);
    bool direct = true;
    if (!lifted.is_unit())
        for (const auto& g : lifted.generators()) {
            for (std::size_t i = 0; i < b.size() && direct; ++i)
                direct = lifted.contains(bracket(b, g, Polynomial::variable(algebra.ring(), i)));
            if (!direct) break;
        }
    auto deltas = induced_derivations(b);
    bool differential = is_differential_ideal(algebra, lifted, deltas);
    if (direct != differential)
        throw InternalInconsistency("Poisson-ideal verdict differs from the differential-ideal verdict");
    return direct;
}

std::optional<CommutatorWitness> commutator_identity_check(const PoissonStructure& b) {
    const auto& algebra = b.algebra();
    const auto& ring = algebra.ring();
    const std::size_t n = b.size();
    auto deltas = induced_derivations(b);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Polynomial& q = b.entry(j, i);
            for (std::size_t l = 0; l < n; ++l) {
                auto xl = Polynomial::variable(ring, l);
                Polynomial residue = commutator(deltas[i], deltas[j], xl);
                for (std::size_t k = 0; k < n; ++k) {
                    auto dq = partial_derivative(q, k);
                    if (!dq.is_zero()) residue -= dq * deltas[k](xl);
                }
                residue = algebra.normal_form(residue);
                if (!residue.is_zero()) return CommutatorWitness{i, j, l, std::move(residue)};
            }
        }
    return std::nullopt;
}

PoissonStructure from_commuting_derivations(const Derivation& d1, const Derivation& d2) {
    const auto& algebra = d1.algebra();
    if (!algebra.same_as(d2.algebra())) throw RingMismatch("derivations over different algebras");
    const auto& ring = algebra.ring();
    const std::size_t n = ring->size();
    for (std::size_t i = 0; i < n; ++i) {
        auto c = commutator(d1, d2, Polynomial::variable(ring, i));
        if (!c.is_zero()) throw NonCommuting(ring->name(i), to_string(c));
    }
    StructureEntries entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            entries.emplace(std::make_pair(i, j), d1.image(i) * d2.image(j) - d2.image(i) * d1.image(j));
    return PoissonStructure::make(algebra, entries);
}

GroebnerBasis extend_ideal(const GroebnerBasis& ideal, const Ring& target, const GroebnerOptions& opts) {
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.in_ring(target));
    return buchberger(target, gens, opts);
}

PoissonStructure rt_extension(const Derivation& delta, const std::string& t_name) {
    if (delta.is_zero()) throw PreconditionError("rt_extension: the derivation is trivial");
    const auto& base = delta.algebra();
    const auto& ring = base.ring();
    std::string t = ring->index_of(t_name) ? ring->fresh_name(t_name) : t_name;
    Ring ext = ring->extended({t});
    PresentedAlgebra algebra(extend_ideal(base.presentation(), ext), base.domain_claim());
    std::vector<Polynomial> coeffwise;
    for (const auto& img : delta.images()) coeffwise.push_back(img.in_ring(ext));
    coeffwise.push_back(Polynomial(ext));
    Derivation d1(algebra, std::move(coeffwise));
    Derivation d2 = Derivation::partial(algebra, ring->size());
    return from_commuting_derivations(d1, d2);
}

RationalityEvidence rationality_evidence(const PoissonStructure& b, int degree_bound) {
    const auto& algebra = b.algebra();
    if (!algebra.domain_claim()) throw PreconditionError("rationality_evidence: algebra is not flagged as a domain");
    if (degree_bound < 1) throw PreconditionError("rationality_evidence: degree bound must be at least 1");
    const auto& ring = algebra.ring();
    auto deltas = induced_derivations(b);
    auto is_standard = [&](const Monomial& m) {
        for (const auto& g : algebra.presentation().generators())
            if (g.leading_monomial().divides(m)) return false;
        return true;
    };
    std::vector<Monomial> all = monomials_up_to(ring->size(), degree_bound);
    std::vector<Monomial> columns;
    for (const auto& m : all)
        if (is_standard(m)) columns.push_back(m);

    for (const auto& bm : all) {
        auto den = algebra.normal_form(Polynomial::monomial(ring, bm));
        if (den.is_zero()) continue;
        std::vector<Polynomial> ddens;
        for (const auto& d : deltas) ddens.push_back(d(den));
        // Rows indexed by (derivation, monomial of the residue), one column per candidate monomial of a.
        std::map<std::pair<std::size_t, Monomial>, std::size_t> row_index;
        std::vector<std::vector<std::pair<std::size_t, Rational>>> column_entries(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto a = Polynomial::monomial(ring, columns[c]);
            for (std::size_t k = 0; k < deltas.size(); ++k) {
                auto r = algebra.normal_form(deltas[k](a) * den - a * ddens[k]);
                for (const auto& t : r.terms()) {
                    auto [it, _] = row_index.try_emplace({k, t.monomial}, row_index.size());
                    column_entries[c].push_back({it->second, t.coefficient});
                }
            }
        }
        RationalMatrix m(row_index.size(), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c)
            for (const auto& [r, v] : column_entries[c]) m(r, c) = v;
        for (const auto& vec : m.kernel()) {
            PolynomialBuilder builder(ring);
            for (std::size_t c = 0; c < vec.size(); ++c) builder.add(columns[c], vec[c]);
            auto num = algebra.normal_form(builder.build());
            if (num.is_zero() || is_rational_multiple(algebra, num, den)) continue;
            num = num.monic();
            if (!is_constant_fraction(algebra, num, den, deltas))
                throw InternalInconsistency("rationality evidence produced an unverified constant");
            return Constant{num, den};
        }
    }
    return NoConstantUpTo{degree_bound};
}

bool tall_prime_bracket_check(const PoissonStructure& b, const GroebnerBasis& prime) {
    const auto& algebra = b.algebra();
    auto lifted = algebra.lift(prime);
    if (lifted.is_unit()) throw PreconditionError("tall_prime_bracket_check: ideal is not proper");
    if (krull_dim(lifted) > 1) throw PreconditionError("tall_prime_bracket_check: dim A/Q exceeds 1");
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (!lifted.contains(b.entry(i, j))) return false;
    return true;
}

bool radical_is_poisson(const PoissonStructure& b, const GroebnerBasis& ideal, const GroebnerOptions& opts) {
    auto lifted = b.algebra().lift(ideal, opts);
    if (!is_poisson_ideal(b, lifted)) throw PreconditionError("radical_is_poisson: ideal is not Poisson");
    return is_poisson_ideal(b, zero_dim_radical(lifted, opts));
}

}  // namespace pdga
