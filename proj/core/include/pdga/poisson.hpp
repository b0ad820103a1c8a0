#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pdga/differential.hpp"

namespace pdga {

/// Structure entries {x_i, x_j} keyed by (i, j) with i < j; missing pairs are zero.
using StructureEntries = std::map<std::pair<std::size_t, std::size_t>, Polynomial>;

struct JacobiWitness {
    std::size_t i, j, k;
    /// {x_i,{x_j,x_k}} + {x_k,{x_i,x_j}} + {x_j,{x_k,x_i}} in normal form.
    Polynomial jacobiator;
};

class JacobiViolation : public Error {
public:
    JacobiViolation(std::vector<std::string> triple, std::string jacobiator)
        : Error("Jacobi identity fails on (" + triple.at(0) + ", " + triple.at(1) + ", " + triple.at(2) +
                "): jacobiator " + jacobiator),
          triple_(std::move(triple)), jacobiator_(std::move(jacobiator)) {}

    const std::vector<std::string>& triple() const noexcept { return triple_; }
    const std::string& jacobiator() const noexcept { return jacobiator_; }

private:
    std::vector<std::string> triple_;
    std::string jacobiator_;
};

/// {g, x_i} is not in the presentation ideal for a presentation generator g.
class PresentationNotPoisson : public Error {
public:
    PresentationNotPoisson(std::string generator, std::string variable, std::string residue)
        : Error("presentation ideal is not Poisson: {" + generator + ", " + variable + "} = " + residue),
          generator_(std::move(generator)), variable_(std::move(variable)), residue_(std::move(residue)) {}

    const std::string& generator() const noexcept { return generator_; }
    const std::string& variable() const noexcept { return variable_; }
    const std::string& residue() const noexcept { return residue_; }

private:
    std::string generator_, variable_, residue_;
};

class NonCommuting : public PreconditionError {
public:
    NonCommuting(std::string variable, std::string residue)
        : PreconditionError("derivations do not commute on " + variable + ": commutator " + residue),
          variable_(std::move(variable)), residue_(std::move(residue)) {}

    const std::string& variable() const noexcept { return variable_; }
    const std::string& residue() const noexcept { return residue_; }

private:
    std::string variable_, residue_;
};

/// Antisymmetric structure matrix {x_i, x_j} over a presented algebra; the
/// bracket of arbitrary elements is its biderivation extension.
class PoissonStructure {
public:
    /// Validates the Jacobi identity on generator triples and that the
    /// presentation ideal is Poisson; throws JacobiViolation / PresentationNotPoisson.
    static PoissonStructure make(PresentedAlgebra algebra, const StructureEntries& entries);
    /// No validation; `validated()` is false. Used to study candidate brackets.
    static PoissonStructure unchecked(PresentedAlgebra algebra, const StructureEntries& entries);

    const PresentedAlgebra& algebra() const noexcept { return algebra_; }
    std::size_t size() const noexcept { return n_; }
    bool validated() const noexcept { return validated_; }
    /// {x_i, x_j} for any i, j.
    const Polynomial& entry(std::size_t i, std::size_t j) const { return matrix_.at(i * n_ + j); }
    /// Entries with i < j, zero ones included.
    StructureEntries entries() const;

private:
    PoissonStructure(PresentedAlgebra algebra, const StructureEntries& entries);

    PresentedAlgebra algebra_;
    std::size_t n_ = 0;
    std::vector<Polynomial> matrix_;
    bool validated_ = false;
};

Polynomial bracket(const PoissonStructure& b, const Polynomial& f, const Polynomial& g);

/// First generator triple i < j < k with nonzero Jacobiator.
std::optional<JacobiWitness> jacobi_witness(const PoissonStructure& b);

/// First presentation generator g and variable index i with {g, x_i} outside the presentation.
std::optional<std::pair<Polynomial, std::size_t>> presentation_witness(const PoissonStructure& b);

/// delta_i = {-, x_i}, so delta_i(x_j) = {x_j, x_i}.
std::vector<Derivation> induced_derivations(const PoissonStructure& b);

/// Computes the direct verdict ({g, x_i} in J for all generators g and i) and the
/// differential verdict under the induced derivations; throws
/// InternalInconsistency if they disagree.
bool is_poisson_ideal(const PoissonStructure& b, const GroebnerBasis& ideal);

struct CommutatorWitness {
    std::size_t i, j, l;
    Polynomial residue;
};

/// Checks [delta_i, delta_j](x_l) = sum_k dq/dx_k * delta_k(x_l) with q = {x_j, x_i} for
/// all i < j and all l; returns the first failure. Meaningful for unvalidated
/// structures too, where it detects Jacobi failures.
std::optional<CommutatorWitness> commutator_identity_check(const PoissonStructure& b);

/// {r, s} = d1(r) d2(s) - d2(r) d1(s); throws NonCommuting when [d1, d2] is nonzero
/// on some variable.
PoissonStructure from_commuting_derivations(const Derivation& d1, const Derivation& d2);

/// Poisson structure on R[t] with {p, q} = p^delta q' - p' q^delta, where p^delta applies
/// delta to the coefficients. t is named `t_name`, or a fresh variant if taken.
PoissonStructure rt_extension(const Derivation& delta, const std::string& t_name = "t");

/// The ideal generated by `ideal` in a ring with more variables.
GroebnerBasis extend_ideal(const GroebnerBasis& ideal, const Ring& target, const GroebnerOptions& opts = {});

struct NoConstantUpTo {
    int degree_bound;
};

using RationalityEvidence = std::variant<Constant, NoConstantUpTo>;

/// Searches fractions a/b with b a monomial and deg a, deg b <= degree_bound that
/// are killed by every induced derivation and are not rational numbers. Evidence
/// only: absence of a constant says nothing beyond the bound.
RationalityEvidence rationality_evidence(const PoissonStructure& b, int degree_bound);

/// Whether every structure entry lies in Q (equivalently {a, b} in Q for all a, b).
/// Requires Q proper with dim A/Q <= 1.
bool tall_prime_bracket_check(const PoissonStructure& b, const GroebnerBasis& prime);

/// For a zero-dimensional Poisson ideal J: whether its radical is again Poisson.
bool radical_is_poisson(const PoissonStructure& b, const GroebnerBasis& ideal, const GroebnerOptions& opts = {});

}  // namespace pdga
