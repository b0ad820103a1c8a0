#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pdga/algebra.hpp"
#include "pdga/errors.hpp"

namespace pdga {

/// A derivation whose image of some presentation generator is nonzero in A.
class IllDefinedDerivation : public PreconditionError {
public:
    IllDefinedDerivation(std::string generator, std::string residue)
        : PreconditionError("derivation does not preserve the presentation: generator " + generator +
                            " maps to " + residue),
          generator_(std::move(generator)), residue_(std::move(residue)) {}

    const std::string& generator() const noexcept { return generator_; }
    const std::string& residue() const noexcept { return residue_; }

private:
    std::string generator_;
    std::string residue_;
};

/// Q-linear derivation of a presented algebra, given by the images of the ring
/// variables (stored as normal forms).
class Derivation {
public:
    /// Checks that every presentation generator is sent into the presentation
    /// ideal; throws IllDefinedDerivation otherwise.
    Derivation(PresentedAlgebra algebra, std::vector<Polynomial> images);

    /// Skips the well-definedness check.
    static Derivation unchecked(PresentedAlgebra algebra, std::vector<Polynomial> images);
    static Derivation zero(PresentedAlgebra algebra);
    /// d/dx_var on a polynomial ring (checked like any other derivation).
    static Derivation partial(PresentedAlgebra algebra, std::size_t var);

    const PresentedAlgebra& algebra() const noexcept { return algebra_; }
    std::span<const Polynomial> images() const noexcept { return images_; }
    const Polynomial& image(std::size_t var) const { return images_.at(var); }
    bool is_zero() const noexcept;

    /// Normal form of sum_i dp/dx_i * image(x_i).
    Polynomial operator()(const Polynomial& p) const;

    /// First presentation generator whose image does not vanish in A.
    std::optional<std::pair<Polynomial, Polynomial>> well_definedness_witness() const;

    friend bool operator==(const Derivation& a, const Derivation& b);

private:
    struct Unchecked {};
    Derivation(PresentedAlgebra algebra, std::vector<Polynomial> images, Unchecked);

    PresentedAlgebra algebra_;
    std::vector<Polynomial> images_;
};

Polynomial apply(const Derivation& delta, const Polynomial& p);

/// Commutator [d1, d2] evaluated on p.
Polynomial commutator(const Derivation& d1, const Derivation& d2, const Polynomial& p);

/// A generator g of an ideal and the index of a derivation with delta(g) outside it.
struct DifferentialWitness {
    Polynomial generator;
    std::size_t derivation;
    Polynomial image;
};

/// The ideal is lifted to contain the presentation of `algebra` before testing.
std::optional<DifferentialWitness> differential_witness(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                                                        std::span<const Derivation> deltas);
bool is_differential_ideal(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                           std::span<const Derivation> deltas);

struct ClosureReport {
    GroebnerBasis ideal;
    /// Passes over the generators, including the final one that added nothing.
    int rounds = 0;
};

/// Smallest differential ideal containing `gens` and the presentation.
ClosureReport differential_closure(const PresentedAlgebra& algebra, std::span<const Polynomial> gens,
                                   std::span<const Derivation> deltas, const GroebnerOptions& opts = {});

struct ChainReport {
    /// J_0 = J, J_1, ...; when stabilized the last two entries are equal.
    std::vector<GroebnerBasis> chain;
    bool stabilized = false;
    /// Number of strict inclusions J_{n+1} < J_n observed.
    int iterations = 0;
    /// drop_witnesses[n] is a generator of J_n outside J_{n+1}, for each strict step.
    std::vector<Polynomial> drop_witnesses;

    const GroebnerBasis& last() const { return chain.back(); }
};

/// Descending chain J_{n+1} = {a in J_n : delta(a) in J_n for every delta}. When it
/// stabilizes the last entry is the largest differential ideal inside J; otherwise
/// every differential ideal inside J lies in every entry.
ChainReport differential_core_descent(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                                      std::span<const Derivation> deltas, int max_iter,
                                      const GroebnerOptions& opts = {});

/// One descent step.
GroebnerBasis differential_core_step(const PresentedAlgebra& algebra, const GroebnerBasis& ideal,
                                     std::span<const Derivation> deltas, const GroebnerOptions& opts = {});

/// Whether a/b is killed by every derivation: delta(a)*b - a*delta(b) vanishes in A.
/// Requires the algebra's domain claim and b nonzero in A.
bool is_constant_fraction(const PresentedAlgebra& algebra, const Polynomial& a, const Polynomial& b,
                          std::span<const Derivation> deltas);

struct Constant {
    Polynomial numerator;
    Polynomial denominator;
};

struct NotFound {
    std::string reason;
};

using ConstantSearchResult = std::variant<Constant, NotFound>;

/// A precondition of the constant search failed for the ideal at `ideal_index`.
class SearchPreconditionError : public PreconditionError {
public:
    SearchPreconditionError(const std::string& what, std::size_t ideal_index)
        : PreconditionError(what), ideal_index_(ideal_index) {}

    std::size_t ideal_index() const noexcept { return ideal_index_; }

private:
    std::size_t ideal_index_;
};

/// Searches for a nonconstant fraction killed by every derivation, starting from a
/// subspace V and a finite family of differential ideals each meeting V. Any
/// Constant returned has been re-verified; NotFound is a legitimate outcome.
ConstantSearchResult constants_search(const Subspace& space, std::span<const GroebnerBasis> ideals,
                                      std::span<const Derivation> deltas, const GroebnerOptions& opts = {});

/// Whether a/b is a rational constant in Frac(A): a - c*b vanishes for c read off
/// the leading coefficients.
bool is_rational_multiple(const PresentedAlgebra& algebra, const Polynomial& a, const Polynomial& b);

}  // namespace pdga
