#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdga/differential.hpp"

namespace pdga {

/// Rows sum_i P_i(y) x_i + Q(y) over Q[x_1..x_n, y_1..y_d]. Entries are stored in the
/// y-ring.
class LinearParamSystem {
public:
    struct Row {
        std::vector<Polynomial> p;  // coefficients of x_1..x_n
        Polynomial q;
    };

    /// `ring` holds both variable groups; `x_vars` names the x-variables. Each
    /// polynomial must be affine-linear in the x-variables.
    static LinearParamSystem from_polynomials(const Ring& ring, const std::vector<std::string>& x_vars,
                                              std::span<const Polynomial> rows);

    std::size_t n() const noexcept { return x_names_.size(); }
    std::size_t d() const noexcept { return y_ring_->size(); }
    std::size_t m() const noexcept { return rows_.size(); }
    const std::vector<std::string>& x_names() const noexcept { return x_names_; }
    const Ring& y_ring() const noexcept { return y_ring_; }
    /// Q[x_1..x_n, y_1..y_d] in that order.
    const Ring& full_ring() const noexcept { return full_ring_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    /// Largest total degree among entries, at least 1.
    int degree_cap() const noexcept { return degree_cap_; }
    /// The row polynomials in the full ring.
    std::vector<Polynomial> equations() const;

private:
    std::vector<std::string> x_names_;
    Ring y_ring_;
    Ring full_ring_;
    std::vector<Row> rows_;
    int degree_cap_ = 1;
};

struct NotApplicable {
    std::string reason;
};

struct SolutionCount {
    bool finite = false;
    long count = 0;  // distinct geometric points when finite
    long with_multiplicity = 0;
    Integer bound;  // ((n+1)N)^{d+1}
};

/// Solution set of the system: finite count (checked against ((n+1)N)^{d+1}) or
/// infinite. Throws InternalInconsistency if the bound fails.
SolutionCount count_or_infinite(const LinearParamSystem& sys, const GroebnerOptions& opts = {});

struct MinorsDecomposition {
    /// (n+1)-minors of A = [P | -Q] and n-minors of B = [P], in the y-ring.
    GroebnerBasis y_ideal;
    GroebnerBasis z_ideal;
};

/// NotApplicable when m <= n.
std::variant<MinorsDecomposition, NotApplicable> minors_decomposition(const LinearParamSystem& sys,
                                                                      const GroebnerOptions& opts = {});

/// distinct(Y) - distinct(Y + Z) when Y is zero-dimensional (0 for the unit ideal).
std::optional<long> minors_point_count(const MinorsDecomposition& minors, const GroebnerOptions& opts = {});

/// Determinant by cofactor expansion along the first row.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix, const Ring& ring);

struct KroneckerResult {
    std::vector<Polynomial> combinations;
    std::vector<std::vector<Integer>> coefficients;
    bool verified = false;
    /// Failed draws before the returned one.
    int retries = 0;
    /// Input generators outside the radical of the last draw, when unverified.
    std::vector<Polynomial> witnesses;
};

struct KroneckerOptions {
    int max_retries = 5;
    long initial_height = 4;
    GroebnerOptions groebner{};
};

/// d+1 integer combinations of `gens` (d = number of ring variables) with the same
/// zero set, verified by radical membership of every input generator.
KroneckerResult kronecker_reduce(std::span<const Polynomial> gens, std::uint64_t seed,
                                 const KroneckerOptions& opts = {});

struct BezoutResult {
    long distinct = 0;
    Integer bound;  // N^{d+1}
    bool ok = false;
};

/// Requires every generator of degree <= N (PreconditionError otherwise);
/// NotApplicable for positive-dimensional ideals.
std::variant<BezoutResult, NotApplicable> bezout_check(const GroebnerBasis& ideal, int degree_bound,
                                                       const GroebnerOptions& opts = {});
/// Same check for the ideal generated by `gens`, whose degrees are the ones bounded by N.
std::variant<BezoutResult, NotApplicable> bezout_check(const Ring& ring, std::span<const Polynomial> gens,
                                                       int degree_bound, const GroebnerOptions& opts = {});

struct LogdivResult {
    /// Points per chart, after assigning each point to the chart of its first nonzero coordinate.
    std::vector<long> chart_counts;
    long total = 0;
    Integer bound;  // (dim V)^{2 + m dim W}
    bool ok = false;
    bool uncountable_suspect = false;
    /// First chart with a positive-dimensional solution set.
    std::optional<std::size_t> suspect_chart;
    /// Dimension of the span of V*W and the L_j(V).
    std::size_t ambient_dimension = 0;
};

/// Counts f in P(V) with L_j(f)/f in W for every derivation L_j, chart by chart.
/// Up to `threads` charts are solved concurrently.
LogdivResult logdiv_count(const Subspace& v, const Subspace& w, std::span<const Derivation> deltas,
                          unsigned threads = 1, const GroebnerOptions& opts = {});

/// Polynomial systems of each chart, for inspection and tests: chart q sets x_q = 1
/// and x_i = 0 for i < q. Variables are x_1..x_n then y_{k,j}.
std::vector<std::vector<Polynomial>> logdiv_chart_systems(const Subspace& v, const Subspace& w,
                                                          std::span<const Derivation> deltas);

}  // namespace pdga
