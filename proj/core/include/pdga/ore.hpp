#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdga/differential.hpp"

namespace pdga {

/// Element sum_i r_i x^i of R[x; delta] in left canonical form. Coefficients are
/// normal forms in R; trailing zeros are stripped.
class OrePolynomial {
public:
    OrePolynomial(Derivation twist, std::vector<Polynomial> coefficients);

    static OrePolynomial constant(Derivation twist, const Polynomial& r);
    /// x^power.
    static OrePolynomial x(Derivation twist, unsigned power = 1);

    const Derivation& twist() const noexcept { return twist_; }
    const PresentedAlgebra& base() const noexcept { return twist_.algebra(); }
    std::span<const Polynomial> coefficients() const noexcept { return coeffs_; }
    /// -1 for zero.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// r_i, zero beyond the degree.
    Polynomial coefficient(std::size_t i) const;

    OrePolynomial& operator+=(const OrePolynomial& g);
    OrePolynomial& operator-=(const OrePolynomial& g);
    friend OrePolynomial operator+(OrePolynomial f, const OrePolynomial& g) { return f += g; }
    friend OrePolynomial operator-(OrePolynomial f, const OrePolynomial& g) { return f -= g; }
    friend OrePolynomial operator*(OrePolynomial f, const Rational& c);
    friend OrePolynomial operator*(const OrePolynomial& f, const OrePolynomial& g);
    friend bool operator==(const OrePolynomial& f, const OrePolynomial& g);

    /// e.g. `a*X^2 + 2*X`; multi-term coefficients are parenthesized.
    std::string to_string(const std::string& var = "X") const;

private:
    void require_same_twist(const OrePolynomial& g) const;
    void trim();

    Derivation twist_;
    std::vector<Polynomial> coeffs_;
};

/// Product in left canonical form, by repeated rewriting x r -> r x + delta(r).
/// Throws RingMismatch when the twists differ.
OrePolynomial ore_mul(const OrePolynomial& f, const OrePolynomial& g);

/// x * g.
OrePolynomial x_times(const OrePolynomial& g);

/// Reads `text` as a commutative polynomial in the base variables and `var`, then
/// as the left form sum_i r_i var^i.
OrePolynomial parse_ore(std::string_view text, const Derivation& twist, const std::string& var = "X");

struct TwoSidedCertificate {
    bool ok = true;
    std::size_t checks = 0;
    /// Human-readable description of each failed check.
    std::vector<std::string> failures;
};

/// For a delta-ideal I: checks that f*g and g*f have all coefficients in I for every
/// generator g and sampled f, and that reducing coefficients modulo I commutes
/// with multiplication on every sampled pair. PreconditionError if I is not
/// differential for the twist.
TwoSidedCertificate induced_two_sided(const GroebnerBasis& ideal, const Derivation& twist,
                                      std::span<const std::pair<OrePolynomial, OrePolynomial>> samples);

/// dim V^1 .. dim V^n_max for V spanned by `gens`; requires 1 in V and n_max >= 4.
std::vector<std::size_t> growth_sequence(std::span<const OrePolynomial> gens, int n_max);

struct GkEstimate {
    double estimate = 0;
    /// Root mean square residual of the fit.
    double residual = 0;
    std::size_t points = 0;
};

/// Least-squares slope of log dim V^n against log n over the last `fit_window`
/// fraction of the sequence. Requires at least 3 points in the window.
GkEstimate gk_estimate(std::span<const std::size_t> dims, double fit_window = 0.5);

}  // namespace pdga
