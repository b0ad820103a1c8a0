#include "pdga/dgeometry.hpp"

#include "pdga/parser.hpp"

namespace pdga {

std::vector<std::string> prolongation_names(const Ring& ring) {
    std::vector<std::string> names;
    std::vector<std::string> taken = ring->names();
    for (std::size_t i = 0; i < ring->size(); ++i) {
        std::string name = "Y" + std::to_string(i + 1);
        while (std::find(taken.begin(), taken.end(), name) != taken.end()) name = "_" + name;
        taken.push_back(name);
        names.push_back(std::move(name));
    }
    return names;
}

GroebnerBasis prolongation_ideal(const GroebnerBasis& ideal, const GroebnerOptions& opts) {
    if (ideal.is_unit()) throw PreconditionError("prolongation_ideal: ideal is not proper");
    const auto& ring = ideal.ring();
    Ring doubled = ring->extended(prolongation_names(ring));
    const std::size_t n = ring->size();
    std::vector<Polynomial> gens;
    for (const auto& p : ideal.generators()) {
        auto big = p.in_ring(doubled);
        Polynomial tangent(doubled);
        for (std::size_t i = 0; i < n; ++i) {
            auto d = partial_derivative(big, i);
            if (!d.is_zero()) tangent += d * Polynomial::variable(doubled, n + i);
        }
        gens.push_back(std::move(big));
        gens.push_back(std::move(tangent));
    }
    return buchberger(doubled, gens, opts);
}

DVariety make_dvariety(const PresentedAlgebra& algebra, std::vector<Polynomial> section, const GroebnerOptions& opts) {
    const auto& ring = algebra.ring();
    if (section.size() != ring->size()) throw PreconditionError("make_dvariety: one section entry per variable");
    auto delta = Derivation::unchecked(algebra, std::move(section));
    if (auto w = delta.well_definedness_witness()) throw InvalidSection(to_string(w->first), to_string(w->second));
    if (!algebra.is_unit_algebra() && !algebra.presentation().is_zero_ideal()) {
        // Graph condition: substitute Y = s into the prolongation equations.
        auto prolonged = prolongation_ideal(algebra.presentation(), opts);
        std::vector<Polynomial> images;
        for (std::size_t i = 0; i < ring->size(); ++i) images.push_back(Polynomial::variable(ring, i));
        for (const auto& s : delta.images()) images.push_back(s);
        for (const auto& g : prolonged.generators()) {
            auto r = algebra.normal_form(substitute(g, ring, images));
            if (!r.is_zero()) throw InvalidSection(to_string(g), to_string(r));
        }
    }
    return DVariety(std::move(delta));
}

DVariety dvariety_from_derivation(const Derivation& delta, const GroebnerOptions& opts) {
    return make_dvariety(delta.algebra(), std::vector<Polynomial>(delta.images().begin(), delta.images().end()), opts);
}

bool is_d_subvariety(const DVariety& dv, const GroebnerBasis& subvariety) {
    const auto& base = dv.base();
    if (!same_ring(subvariety.ring(), base.ring())) throw RingMismatch("is_d_subvariety: ring mismatch");
    if (!subvariety.contains(base.presentation()))
        throw PreconditionError("is_d_subvariety: W does not contain the ideal of V");
    const Derivation deltas[] = {dv.induced()};
    return is_differential_ideal(base, subvariety, deltas);
}

SharpLocus constant_sharp_points(const DVariety& dv, const GroebnerOptions& opts) {
    const auto& base = dv.base();
    std::vector<Polynomial> section(dv.section().begin(), dv.section().end());
    SharpLocus locus{base.ideal(section, opts), std::nullopt};
    if (locus.ideal.is_unit()) {
        locus.points = std::vector<std::vector<Rational>>{};
    } else if (krull_dim(locus.ideal) == 0) {
        locus.points = rational_points(locus.ideal);
    }
    return locus;
}

}  // namespace pdga
