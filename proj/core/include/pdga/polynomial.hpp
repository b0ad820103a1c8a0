#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdga/ring.hpp"

namespace pdga {

/// Sparse polynomial with exact rational coefficients. Terms are kept sorted in
/// strictly decreasing order under the ring's term order, with no zero
/// coefficients, so equal polynomials have identical representations.
class Polynomial {
public:
    struct Term {
        Monomial monomial;
        Rational coefficient;

        friend bool operator==(const Term&, const Term&) = default;
    };

    explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

    static Polynomial constant(Ring ring, const Rational& c);
    static Polynomial variable(Ring ring, std::size_t index);
    static Polynomial variable(Ring ring, std::string_view name);
    static Polynomial monomial(Ring ring, Monomial m, const Rational& c = 1);
    /// Canonicalizes arbitrary (unsorted, repeated, zero) terms.
    static Polynomial from_terms(Ring ring, std::vector<Term> terms);

    const Ring& ring() const noexcept { return ring_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
    /// Constant term value; zero when absent.
    Rational constant_term() const;

    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;
    /// -1 for the zero polynomial.
    int total_degree() const noexcept;
    /// Degree in a single variable; -1 for zero.
    int degree_in(std::size_t var) const noexcept;
    Rational coefficient_of(const Monomial& m) const;
    bool uses_variable(std::size_t var) const noexcept;

    Polynomial monic() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& q);
    Polynomial& operator-=(const Polynomial& q);
    Polynomial& operator*=(const Polynomial& q);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
    friend Polynomial operator+(Polynomial p, const Rational& c);
    friend Polynomial operator-(Polynomial p, const Rational& c);

    Polynomial mul_term(const Monomial& m, const Rational& c) const;
    /// p - c*m*q, the reduction step.
    Polynomial sub_mul_term(const Monomial& m, const Rational& c, const Polynomial& q) const;
    /// Throws PreconditionError for negative exponents.
    Polynomial pow(long exponent) const;

    /// Same names interpreted in `target`; every variable used must exist there.
    Polynomial in_ring(const Ring& target) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    friend class PolynomialBuilder;
    void check_ring(const Polynomial& q, const char* op) const;

    Ring ring_;
    std::vector<Term> terms_;
};

Polynomial partial_derivative(const Polynomial& p, std::size_t var);
/// Throws UnknownVariable when `var` is not in the ring.
Polynomial partial_derivative(const Polynomial& p, std::string_view var);

/// Ring homomorphism: variable i of p's ring is sent to images[i] (all in `target`).
Polynomial substitute(const Polynomial& p, const Ring& target, std::span<const Polynomial> images);

/// Accumulates terms and produces a canonical polynomial.
class PolynomialBuilder {
public:
    explicit PolynomialBuilder(Ring ring) : ring_(std::move(ring)) {}

    void add(const Monomial& m, const Rational& c);
    void add(const Polynomial& p, const Rational& scale = 1);
    Polynomial build();

private:
    Ring ring_;
    std::vector<Polynomial::Term> terms_;
};

std::size_t hash_value(const Polynomial& p);

}  // namespace pdga
