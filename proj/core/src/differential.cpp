#include "pdga/differential.hpp"

#include <algorithm>

#include "pdga/parser.hpp"

namespace pdga {

namespace {

void require_same_algebra(const PresentedAlgebra& algebra, const Derivation& delta) {
    if (!algebra.same_as(delta.algebra())) throw RingMismatch("derivation belongs to a different algebra");
}

void require_domain(const PresentedAlgebra& algebra, const char* op) {
    if (!algebra.domain_claim()) throw PreconditionError(std::string(op) + ": algebra is not flagged as a domain");
}

}  // namespace

Derivation::Derivation(PresentedAlgebra algebra, std::vector<Polynomial> images)
    : Derivation(std::move(algebra), std::move(images), Unchecked{}) {
    if (auto w = well_definedness_witness()) throw IllDefinedDerivation(to_string(w->first), to_string(w->second));
}

Derivation::Derivation(PresentedAlgebra algebra, std::vector<Polynomial> images, Unchecked)
    : algebra_(std::move(algebra)) {
    if (images.size() != algebra_.ring()->size())
        throw PreconditionError("derivation needs one image per variable");
    images_.reserve(images.size());
    for (const auto& p : images) images_.push_back(algebra_.normal_form(p.in_ring(algebra_.ring())));
}

Derivation Derivation::unchecked(PresentedAlgebra algebra, std::vector<Polynomial> images) {
    return Derivation(std::move(algebra), std::move(images), Unchecked{});
}

Derivation Derivation::zero(PresentedAlgebra algebra) {
    std::vector<Polynomial> images(algebra.ring()->size(), Polynomial(algebra.ring()));
    return Derivation(std::move(algebra), std::move(images), Unchecked{});
}

Derivation Derivation::partial(PresentedAlgebra algebra, std::size_t var) {
    std::vector<Polynomial> images(algebra.ring()->size(), Polynomial(algebra.ring()));
    images.at(var) = Polynomial::constant(algebra.ring(), 1);
    return Derivation(std::move(algebra), std::move(images));
}

bool Derivation::is_zero() const noexcept {
    return std::all_of(images_.begin(), images_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial Derivation::operator()(const Polynomial& p) const {
    if (!same_ring(p.ring(), algebra_.ring())) throw RingMismatch("derivation applied outside its algebra");
    Polynomial acc(algebra_.ring());
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].is_zero() || !p.uses_variable(i)) continue;
        acc += partial_derivative(p, i) * images_[i];
    }
    return algebra_.normal_form(acc);
}

std::optional<std::pair<Polynomial, Polynomial>> Derivation::well_definedness_witness() const {
    for (const auto& g : algebra_.presentation().generators()) {
        auto r = (*this)(g);
        if (!r.is_zero()) return std::make_pair(g, r);
    }
    return std::nullopt;
}

bool operator==(const Derivation& a, const Derivation& b) {
    return a.algebra_.same_as(b.algebra_) && a.images_ == b.images_;
}

Polynomial apply(const Derivation& delta, const Polynomial& p) { return delta(p); }

Polynomial commutator(const Derivation& d1, const Derivation& d2, const Polynomial& p) {
    return d1(d2(p)) - d2(d1(p));
}

std::optional<DifferentialWitness> differential_witness(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                                                        std::span<const Derivation> deltas) {
    for (const auto& d : deltas) require_same_algebra(algebra, d);
    auto lifted = algebra.lift(ideal);
    if (lifted.is_unit()) return std::nullopt;
    for (const auto& g : lifted.generators())
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            auto img = deltas[k](g);
            if (!lifted.contains(img)) return DifferentialWitness{g, k, img};
        }
    return std::nullopt;
}

bool is_differential_ideal(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                           std::span<const Derivation> deltas) {
    return !differential_witness(algebra, ideal, deltas).has_value();
}

ClosureReport differential_closure(const PresentedAlgebra& algebra, std::span<const Polynomial> gens,
                                   std::span<const Derivation> deltas, const GroebnerOptions& opts) {
    for (const auto& d : deltas) require_same_algebra(algebra, d);
    ClosureReport report{algebra.ideal(gens, opts), 0};
    for (;;) {
        ++report.rounds;
        std::vector<Polynomial> fresh;
        if (!report.ideal.is_unit())
            for (const auto& g : report.ideal.generators())
                for (const auto& d : deltas) {
                    auto img = d(g);
                    if (!report.ideal.contains(img)) fresh.push_back(std::move(img));
                }
        if (fresh.empty()) return report;
        report.ideal = ideal_sum(report.ideal, fresh, opts);
    }
}

GroebnerBasis differential_core_step(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                                     std::span<const Derivation> deltas, const GroebnerOptions& opts) {
    for (const auto& d : deltas) require_same_algebra(algebra, d);
    auto current = algebra.lift(ideal, opts);
    if (deltas.empty() || current.is_unit()) return current;
    auto gens = current.generators();
    if (gens.empty()) return current;
    // a = sum h_i g_i satisfies delta(a) = sum h_i delta(g_i) modulo J, so the
    // admissible cofactors form the solution module of the rows below.
    std::vector<ModuleVector> rows;
    for (const auto& d : deltas) {
        ModuleVector row;
        for (const auto& g : gens) row.push_back(d(g));
        rows.push_back(std::move(row));
    }
    auto solutions = module_solve_rows(rows, current, opts);
    std::vector<Polynomial> next;
    for (const auto& h : solutions) {
        Polynomial a(algebra.ring());
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (!h[i].is_zero()) a += h[i] * gens[i];
        if (!a.is_zero()) next.push_back(std::move(a));
    }
    for (const auto& g : algebra.presentation().generators()) next.push_back(g);
    return buchberger(algebra.ring(), next, opts);
}

ChainReport differential_core_descent(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                                      std::span<const Derivation> deltas, int max_iter, const GroebnerOptions& opts) {
    if (max_iter < 1) throw PreconditionError("core descent: max_iter must be at least 1");
    ChainReport report;
    report.chain.push_back(algebra.lift(ideal, opts));
    for (int step = 0; step < max_iter; ++step) {
        const GroebnerBasis& current = report.chain.back();
        GroebnerBasis next = differential_core_step(algebra, current, deltas, opts);
        if (!current.contains(next))
            throw InternalInconsistency("core descent produced an ideal not contained in its predecessor");
        if (next.contains(current)) {
            report.chain.push_back(std::move(next));
            report.stabilized = true;
            return report;
        }
        for (const auto& g : current.generators())
            if (!next.contains(g)) {
                report.drop_witnesses.push_back(g);
                break;
            }
        report.chain.push_back(std::move(next));
        ++report.iterations;
    }
    return report;
}

bool is_constant_fraction(const PresentedAlgebra& algebra, const Polynomial& a, const Polynomial& b,
                          std::span<const Derivation> deltas) {
    require_domain(algebra, "is_constant_fraction");
    if (algebra.normal_form(b).is_zero()) throw PreconditionError("is_constant_fraction: zero denominator");
    for (const auto& d : deltas) {
        require_same_algebra(algebra, d);
        if (!algebra.normal_form(d(a) * b - a * d(b)).is_zero()) return false;
    }
    return true;
}

bool is_rational_multiple(const PresentedAlgebra& algebra, const Polynomial& a, const Polynomial& b) {
    auto na = algebra.normal_form(a);
    auto nb = algebra.normal_form(b);
    if (nb.is_zero()) throw PreconditionError("is_rational_multiple: zero denominator");
    if (na.is_zero()) return true;
    Rational c = na.leading_coefficient() / nb.leading_coefficient();
    return algebra.normal_form(na - nb * c).is_zero();
}

namespace {

bool is_zero_in(const PresentedAlgebra& algebra, const GroebnerBasis& ideal) {
    return algebra.presentation().contains(ideal);
}

ConstantSearchResult search(const Subspace& space, std::vector<GroebnerBasis> family,
                            std::span<const Derivation> deltas, const GroebnerOptions& opts) {
    const auto& algebra = space.algebra();
    const std::size_t d = space.dimension();
    if (d < 2) return NotFound{"base dimension"};
    auto v = space.basis();
    const Polynomial& vd = v[d - 1];

    std::vector<Polynomial> u;
    for (const auto& delta : deltas) {
        std::vector<Polynomial> candidate;
        bool nonconstant = false;
        for (std::size_t j = 0; j + 1 < d; ++j) {
            auto uj = algebra.normal_form(delta(v[j]) * vd - v[j] * delta(vd));
            nonconstant = nonconstant || !uj.is_zero();
            candidate.push_back(std::move(uj));
        }
        if (nonconstant) {
            u = std::move(candidate);
            break;
        }
    }
    if (u.empty()) return Constant{v[0], vd};

    // L = {c : sum c_j u_j = 0}; W = Q v_d + {sum c_j v_j : c in L}.
    std::vector<Monomial> support;
    RationalMatrix coeffs = coefficient_matrix(u, support);
    RationalMatrix map(support.size(), u.size());
    for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t c = 0; c < support.size(); ++c) map(c, r) = coeffs(r, c);
    std::vector<Polynomial> w_elems{vd};
    for (const auto& c : map.kernel()) {
        Polynomial combo(algebra.ring());
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0) combo += v[j] * c[j];
        w_elems.push_back(std::move(combo));
    }
    Subspace w = Subspace::span(algebra, w_elems);
    Subspace u_space = Subspace::span(algebra, u);

    std::vector<GroebnerBasis> t_family, rest;
    for (auto& ideal : family) {
        if (ideal_cap_subspace(ideal, u_space).dimension() == 0)
            t_family.push_back(std::move(ideal));
        else
            rest.push_back(std::move(ideal));
    }
    // An empty family intersects to the unit ideal.
    if (!rest.empty() && is_zero_in(algebra, intersect_all(rest, opts)))
        return search(u_space, std::move(rest), deltas, opts);
    return search(w, std::move(t_family), deltas, opts);
}

}  // namespace

ConstantSearchResult constants_search(const Subspace& space, std::span<const GroebnerBasis> ideals,
                                      std::span<const Derivation> deltas, const GroebnerOptions& opts) {
    const auto& algebra = space.algebra();
    require_domain(algebra, "constants_search");
    for (const auto& d : deltas) require_same_algebra(algebra, d);
    std::vector<GroebnerBasis> family;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        auto lifted = algebra.lift(ideals[i], opts);
        if (!is_differential_ideal(algebra, lifted, deltas))
            throw SearchPreconditionError("ideal #" + std::to_string(i) + " is not differential", i);
        if (ideal_cap_subspace(lifted, space).dimension() == 0)
            throw SearchPreconditionError("ideal #" + std::to_string(i) + " meets the subspace only in 0", i);
        family.push_back(std::move(lifted));
    }
    auto result = search(space, std::move(family), deltas, opts);
    if (auto* c = std::get_if<Constant>(&result)) {
        if (!is_constant_fraction(algebra, c->numerator, c->denominator, deltas) ||
            is_rational_multiple(algebra, c->numerator, c->denominator))
            throw InternalInconsistency("constant search returned an unverified fraction");
    }
    return result;
}

}  // namespace pdga
