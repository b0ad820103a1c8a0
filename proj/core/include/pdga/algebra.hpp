#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdga/groebner.hpp"
#include "pdga/linalg.hpp"
#include "pdga/polynomial.hpp"

namespace pdga {

/// Dense univariate polynomial over Q; coefficients in ascending degree.
class UnivariatePolynomial {
public:
    UnivariatePolynomial() = default;
    explicit UnivariatePolynomial(std::vector<Rational> coeffs);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    UnivariatePolynomial monic() const;
    UnivariatePolynomial derivative() const;
    Rational evaluate(const Rational& t) const;

    friend UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
    friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
    /// Quotient and remainder of Euclidean division; b nonzero.
    friend std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& a,
                                                                         const UnivariatePolynomial& b);
    friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

    /// Image in `ring` with the indeterminate sent to variable `var`.
    Polynomial to_polynomial(const Ring& ring, std::size_t var) const;
    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Monic gcd.
UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b);
/// p / gcd(p, p'), monic.
UnivariatePolynomial squarefree_part(const UnivariatePolynomial& p);
/// All rational roots, ascending; nullopt when the integer coefficients are too
/// large to enumerate candidate divisors.
std::optional<std::vector<Rational>> rational_roots(const UnivariatePolynomial& p);

/// A = Q[x1..xn]/I with I held as a reduced Groebner basis. Cheap to copy.
class PresentedAlgebra {
public:
    PresentedAlgebra(Ring ring, std::span<const Polynomial> relations, bool domain_claim = false,
                     const GroebnerOptions& opts = {});
    PresentedAlgebra(GroebnerBasis presentation, bool domain_claim = false);

    /// Q[x1..xn] itself.
    static PresentedAlgebra polynomial_ring(Ring ring, bool domain_claim = false);

    const Ring& ring() const noexcept { return state_->presentation.ring(); }
    const GroebnerBasis& presentation() const noexcept { return state_->presentation; }
    bool domain_claim() const noexcept { return state_->domain_claim; }
    bool is_unit_algebra() const noexcept { return presentation().is_unit(); }

    PresentedAlgebra with_domain_claim(bool claim) const { return PresentedAlgebra(presentation(), claim); }

    Polynomial normal_form(const Polynomial& p) const;
    Polynomial parse(std::string_view text) const;

    /// The ideal of the ambient ring generated by `gens` and the presentation.
    GroebnerBasis ideal(std::span<const Polynomial> gens, const GroebnerOptions& opts = {}) const;
    /// J + I; returns J unchanged when it already contains the presentation.
    GroebnerBasis lift(const GroebnerBasis& ideal, const GroebnerOptions& opts = {}) const;

    bool same_as(const PresentedAlgebra& other) const;

private:
    struct State {
        GroebnerBasis presentation;
        bool domain_claim;
    };
    std::shared_ptr<const State> state_;
};

/// Krull dimension of Q[x]/I, via maximal independent sets modulo the leading
/// term ideal. Throws PreconditionError for the unit ideal.
int krull_dim(const GroebnerBasis& ideal);
int krull_dim(const PresentedAlgebra& algebra);

struct ZeroDimData {
    /// Standard monomials, ascending in the ring order (1 first).
    std::vector<Monomial> basis;
    /// multiplication[i](row, col): coordinate `row` of x_i * basis[col].
    std::vector<RationalMatrix> multiplication;
    std::vector<UnivariatePolynomial> minimal_polynomials;
};

/// Requires dimension 0 (PreconditionError otherwise).
ZeroDimData zero_dim_data(const GroebnerBasis& ideal);
ZeroDimData zero_dim_data(const PresentedAlgebra& algebra);

/// Radical of a zero-dimensional ideal: I plus the squarefree part of every
/// variable's minimal polynomial.
GroebnerBasis zero_dim_radical(const GroebnerBasis& ideal, const GroebnerOptions& opts = {});

struct PointCount {
    long with_multiplicity = 0;
    long distinct = 0;
};

/// Geometric point counts of a zero-dimensional ideal; the unit ideal counts (0, 0).
PointCount count_points(const GroebnerBasis& ideal, const GroebnerOptions& opts = {});
PointCount count_points(const PresentedAlgebra& algebra, const GroebnerOptions& opts = {});

/// Q-rational points of a zero-dimensional ideal, in lexicographic order of
/// coordinates; nullopt when root candidates could not be enumerated.
std::optional<std::vector<std::vector<Rational>>> rational_points(const GroebnerBasis& ideal);

/// Finite-dimensional Q-subspace of an algebra, spanned by linearly independent
/// normal forms.
class Subspace {
public:
    /// Keeps the first linearly independent subsequence of the normal forms of `elements`.
    static Subspace span(const PresentedAlgebra& algebra, std::span<const Polynomial> elements);
    static Subspace span(const PresentedAlgebra& algebra, std::initializer_list<Polynomial> elements);

    const PresentedAlgebra& algebra() const noexcept { return algebra_; }
    std::span<const Polynomial> basis() const noexcept { return basis_; }
    std::size_t dimension() const noexcept { return basis_.size(); }
    bool contains_one() const;

private:
    Subspace(PresentedAlgebra algebra, std::vector<Polynomial> basis)
        : algebra_(std::move(algebra)), basis_(std::move(basis)) {}

    PresentedAlgebra algebra_;
    std::vector<Polynomial> basis_;
};

bool member(const Polynomial& p, const Subspace& space);
/// Basis of {v in span(V) : v in I}; I is lifted to contain the presentation.
Subspace ideal_cap_subspace(const GroebnerBasis& ideal, const Subspace& space);
Subspace span_product(const Subspace& a, const Subspace& b);
Subspace span_power(const Subspace& space, int n);
/// dim V^1 .. dim V^n_max, each power computed from the previous one.
std::vector<std::size_t> span_power_dimensions(const Subspace& space, int n_max);

/// All monomials of total degree <= `degree`, by degree and then lexicographically
/// (x1 > x2 > ...).
std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree);

/// Coordinates of `elements` (normal forms) against a common monomial support,
/// one row per element, columns in the order of `support`.
RationalMatrix coefficient_matrix(std::span<const Polynomial> elements, std::vector<Monomial>& support);

}  // namespace pdga
