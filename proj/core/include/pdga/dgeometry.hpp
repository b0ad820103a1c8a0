#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdga/differential.hpp"

namespace pdga {

/// Prolongation of V(I) inside Q[X, Y]: generated by each Groebner generator P of I
/// and sum_i dP/dX_i * Y_i. The Y variables are named Y1..Yn (made fresh on clash).
/// Generators suffice: for P = sum h_j g_j the product rule leaves a multiple of g_j.
GroebnerBasis prolongation_ideal(const GroebnerBasis& ideal, const GroebnerOptions& opts = {});

/// Names of the Y variables a prolongation of `ring` uses.
std::vector<std::string> prolongation_names(const Ring& ring);

class InvalidSection : public PreconditionError {
public:
    InvalidSection(std::string generator, std::string residue)
        : PreconditionError("section is not tangent to the variety: generator " + generator + " has residue " +
                            residue),
          generator_(std::move(generator)), residue_(std::move(residue)) {}

    const std::string& generator() const noexcept { return generator_; }
    const std::string& residue() const noexcept { return residue_; }

private:
    std::string generator_;
    std::string residue_;
};

/// Affine variety with a regular section s : V -> tau V, equivalently a derivation
/// of its coordinate ring with x_i -> s_i.
class DVariety {
public:
    const PresentedAlgebra& base() const noexcept { return derivation_.algebra(); }
    std::span<const Polynomial> section() const noexcept { return derivation_.images(); }
    const Derivation& induced() const noexcept { return derivation_; }

private:
    friend DVariety make_dvariety(const PresentedAlgebra&, std::vector<Polynomial>, const GroebnerOptions&);
    explicit DVariety(Derivation d) : derivation_(std::move(d)) {}

    Derivation derivation_;
};

/// Validates the section (throws InvalidSection) and the graph condition: the
/// prolongation equations with Y = s vanish on V.
DVariety make_dvariety(const PresentedAlgebra& algebra, std::vector<Polynomial> section,
                       const GroebnerOptions& opts = {});
/// The D-variety whose section is the derivation's images.
DVariety dvariety_from_derivation(const Derivation& delta, const GroebnerOptions& opts = {});

/// W must contain the base presentation (PreconditionError otherwise); true iff W is
/// differential for the induced derivation.
bool is_d_subvariety(const DVariety& dv, const GroebnerBasis& subvariety);

struct SharpLocus {
    /// I(V) + <s_1, ..., s_n>.
    GroebnerBasis ideal;
    /// Rational points of the locus when it is zero-dimensional (empty for the unit
    /// ideal); nullopt when positive-dimensional or not enumerable.
    std::optional<std::vector<std::vector<Rational>>> points;
};

SharpLocus constant_sharp_points(const DVariety& dv, const GroebnerOptions& opts = {});

}  // namespace pdga
