#include "pdga/counting.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <random>
#include <set>

#include "pdga/parser.hpp"

namespace pdga {

namespace {

Integer power(Integer base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return out;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

LinearParamSystem LinearParamSystem::from_polynomials(const Ring& ring, const std::vector<std::string>& x_vars,
                                                      std::span<const Polynomial> rows) {
    if (rows.empty()) throw PreconditionError("linear system needs at least one row");
    LinearParamSystem sys;
    sys.x_names_ = x_vars;
    std::set<std::string> xs(x_vars.begin(), x_vars.end());
    if (xs.size() != x_vars.size()) throw PreconditionError("duplicate x-variable");
    std::vector<std::size_t> x_idx;
    for (const auto& name : x_vars) x_idx.push_back(ring->require(name));
    sys.y_ring_ = ring->without(xs);
    std::vector<std::string> full_names = x_vars;
    for (const auto& y : sys.y_ring_->names()) full_names.push_back(y);
    sys.full_ring_ = VariableRing::make(full_names);

    // Position of each ring variable in the y-ring, or -1 for x-variables.
    std::vector<long> y_pos(ring->size(), -1);
    for (std::size_t i = 0; i < ring->size(); ++i)
        if (!xs.count(ring->name(i))) y_pos[i] = static_cast<long>(*sys.y_ring_->index_of(ring->name(i)));

    for (const auto& poly : rows) {
        auto p = poly.in_ring(ring);
        std::vector<PolynomialBuilder> coeffs(x_vars.size(), PolynomialBuilder(sys.y_ring_));
        PolynomialBuilder constant(sys.y_ring_);
        for (const auto& t : p.terms()) {
            std::vector<Monomial::Exponent> ye(sys.y_ring_->size(), 0);
            int x_degree = 0;
            std::size_t which = 0;
            for (std::size_t i = 0; i < ring->size(); ++i) {
                if (y_pos[i] >= 0) {
                    ye[y_pos[i]] = t.monomial[i];
                } else if (t.monomial[i] > 0) {
                    x_degree += static_cast<int>(t.monomial[i]);
                    which = static_cast<std::size_t>(std::find(x_idx.begin(), x_idx.end(), i) - x_idx.begin());
                }
            }
            if (x_degree > 1)
                throw PreconditionError("row " + to_string(p) + " is not affine-linear in the x-variables");
            (x_degree == 0 ? constant : coeffs[which]).add(Monomial(std::move(ye)), t.coefficient);
        }
        Row row{{}, constant.build()};
        for (auto& b : coeffs) row.p.push_back(b.build());
        for (const auto& e : row.p) sys.degree_cap_ = std::max(sys.degree_cap_, e.total_degree());
        sys.degree_cap_ = std::max(sys.degree_cap_, row.q.total_degree());
        sys.rows_.push_back(std::move(row));
    }
    return sys;
}

std::vector<Polynomial> LinearParamSystem::equations() const {
    std::vector<Polynomial> out;
    for (const auto& row : rows_) {
        Polynomial e = row.q.in_ring(full_ring_);
        for (std::size_t i = 0; i < row.p.size(); ++i)
            if (!row.p[i].is_zero()) e += row.p[i].in_ring(full_ring_) * Polynomial::variable(full_ring_, i);
        out.push_back(std::move(e));
    }
    return out;
}

SolutionCount count_or_infinite(const LinearParamSystem& sys, const GroebnerOptions& opts) {
    SolutionCount out;
    out.bound = power(Integer(static_cast<unsigned long>((sys.n() + 1) * sys.degree_cap())), sys.d() + 1);
    auto ideal = buchberger(sys.full_ring(), sys.equations(), opts);
    if (ideal.is_unit()) {
        out.finite = true;
        return out;
    }
    if (krull_dim(ideal) != 0) return out;
    auto pc = count_points(ideal, opts);
    out.finite = true;
    out.count = pc.distinct;
    out.with_multiplicity = pc.with_multiplicity;
    if (Integer(out.count) > out.bound)
        throw InternalInconsistency("solution count " + std::to_string(out.count) + " exceeds the bound " +
                                    out.bound.get_str());
    return out;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix, const Ring& ring) {
    const std::size_t n = matrix.size();
    if (n == 0) return Polynomial::constant(ring, 1);
    if (n == 1) return matrix[0][0];
    Polynomial acc(ring);
    for (std::size_t c = 0; c < n; ++c) {
        if (matrix[0][c].is_zero()) continue;
        std::vector<std::vector<Polynomial>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(matrix[r][k]);
            minor.push_back(std::move(row));
        }
        auto term = matrix[0][c] * determinant(minor, ring);
        if (c % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

std::variant<MinorsDecomposition, NotApplicable> minors_decomposition(const LinearParamSystem& sys,
                                                                      const GroebnerOptions& opts) {
    const std::size_t n = sys.n(), m = sys.m();
    if (m <= n) return NotApplicable{"needs more rows than x-variables (m = " + std::to_string(m) +
                                     ", n = " + std::to_string(n) + ")"};
    const auto& ring = sys.y_ring();
    std::vector<std::vector<Polynomial>> a;
    for (const auto& row : sys.rows()) {
        std::vector<Polynomial> r = row.p;
        r.push_back(-row.q);
        a.push_back(std::move(r));
    }
    auto minors_of = [&](std::size_t size, std::size_t cols) {
        std::vector<Polynomial> out;
        auto col_sets = subsets(cols, size);
        for (const auto& rows : subsets(m, size))
            for (const auto& cs : col_sets) {
                std::vector<std::vector<Polynomial>> sub;
                for (auto r : rows) {
                    std::vector<Polynomial> line;
                    for (auto c : cs) line.push_back(a[r][c]);
                    sub.push_back(std::move(line));
                }
                auto det = determinant(sub, ring);
                if (!det.is_zero()) out.push_back(std::move(det));
            }
        return out;
    };
    // A is m x (n+1): its (n+1)-minors use every column. B = first n columns.
    auto y_gens = minors_of(n + 1, n + 1);
    auto z_gens = minors_of(n, n);
    return MinorsDecomposition{buchberger(ring, y_gens, opts), buchberger(ring, z_gens, opts)};
}

std::optional<long> minors_point_count(const MinorsDecomposition& minors, const GroebnerOptions& opts) {
    const auto& y = minors.y_ideal;
    if (y.is_unit()) return 0;
    if (krull_dim(y) != 0) return std::nullopt;
    auto both = ideal_sum(y, minors.z_ideal.generators(), opts);
    long inside = both.is_unit() ? 0 : count_points(both, opts).distinct;
    return count_points(y, opts).distinct - inside;
}

KroneckerResult kronecker_reduce(std::span<const Polynomial> gens, std::uint64_t seed, const KroneckerOptions& opts) {
    if (gens.empty()) throw PreconditionError("kronecker_reduce: no generators");
    const auto& ring = gens.front().ring();
    const std::size_t d = ring->size();
    std::mt19937_64 rng(seed);
    long height = std::max(1L, opts.initial_height);
    KroneckerResult out;
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt, height *= 2) {
        std::uniform_int_distribution<long> coeff(-height, height);
        out.combinations.clear();
        out.coefficients.clear();
        out.witnesses.clear();
        for (std::size_t r = 0; r <= d; ++r) {
            Polynomial g(ring);
            std::vector<Integer> row;
            for (const auto& f : gens) {
                long c = coeff(rng);
                row.push_back(Integer(c));
                if (c != 0) g += f.in_ring(ring) * Rational(c);
            }
            out.coefficients.push_back(std::move(row));
            out.combinations.push_back(std::move(g));
        }
        auto reduced = buchberger(ring, out.combinations, opts.groebner);
        for (const auto& f : gens)
            if (!radical_member(f.in_ring(ring), reduced, opts.groebner)) out.witnesses.push_back(f);
        out.retries = attempt;
        if (out.witnesses.empty()) {
            out.verified = true;
            return out;
        }
    }
    return out;
}

namespace {

void require_degree(std::span<const Polynomial> gens, int degree_bound) {
    for (const auto& g : gens)
        if (g.total_degree() > degree_bound)
            throw PreconditionError("bezout_check: generator " + to_string(g) + " exceeds degree " +
                                    std::to_string(degree_bound));
}

std::variant<BezoutResult, NotApplicable> bezout_count(const GroebnerBasis& ideal, int degree_bound,
                                                       const GroebnerOptions& opts) {
    BezoutResult out;
    out.bound = power(Integer(degree_bound), ideal.ring()->size() + 1);
    if (!ideal.is_unit()) {
        if (krull_dim(ideal) != 0) return NotApplicable{"positive-dimensional ideal"};
        out.distinct = count_points(ideal, opts).distinct;
    }
    out.ok = Integer(out.distinct) <= out.bound;
    return out;
}

}  // namespace

std::variant<BezoutResult, NotApplicable> bezout_check(const GroebnerBasis& ideal, int degree_bound,
                                                       const GroebnerOptions& opts) {
    require_degree(ideal.generators(), degree_bound);
    return bezout_count(ideal, degree_bound, opts);
}

std::variant<BezoutResult, NotApplicable> bezout_check(const Ring& ring, std::span<const Polynomial> gens,
                                                       int degree_bound, const GroebnerOptions& opts) {
    require_degree(gens, degree_bound);
    return bezout_count(buchberger(ring, gens, opts), degree_bound, opts);
}

namespace {

struct LogdivSetup {
    Ring ring;
    std::size_t n = 0;
    std::vector<Polynomial> equations;
    std::size_t ambient = 0;
};

LogdivSetup logdiv_setup(const Subspace& v, const Subspace& w, std::span<const Derivation> deltas) {
    const auto& algebra = v.algebra();
    if (!algebra.same_as(w.algebra())) throw RingMismatch("logdiv_count: V and W live in different algebras");
    for (const auto& d : deltas)
        if (!algebra.same_as(d.algebra())) throw RingMismatch("logdiv_count: derivation over another algebra");
    if (v.dimension() == 0) throw PreconditionError("logdiv_count: V is zero");
    auto r = v.basis();
    auto s = w.basis();
    const std::size_t n = r.size(), dw = s.size(), m = deltas.size();

    // products[i][k] = r_i s_k, images[i][j] = L_j(r_i), all in normal form.
    std::vector<std::vector<Polynomial>> products(n), images(n);
    std::vector<Polynomial> spanning;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dw; ++k) products[i].push_back(algebra.normal_form(r[i] * s[k]));
        for (std::size_t j = 0; j < m; ++j) images[i].push_back(deltas[j](r[i]));
        spanning.insert(spanning.end(), products[i].begin(), products[i].end());
        spanning.insert(spanning.end(), images[i].begin(), images[i].end());
    }
    // A reduced echelon basis w_p: the coordinate of an element at w_p is its
    // coefficient at the pivot monomial of w_p.
    std::vector<Monomial> support;
    RationalMatrix mat = coefficient_matrix(spanning, support);
    auto pivots = mat.rref();
    std::vector<Monomial> pivot_monomials;
    for (auto c : pivots) pivot_monomials.push_back(support[c]);
    const std::size_t ell = pivot_monomials.size();

    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < dw; ++k) names.push_back("y" + std::to_string(k + 1) + "_" + std::to_string(j + 1));
    LogdivSetup setup;
    setup.ring = VariableRing::make(names);
    setup.n = n;
    setup.ambient = ell;
    auto x = [&](std::size_t i) { return Polynomial::variable(setup.ring, i); };
    auto y = [&](std::size_t k, std::size_t j) { return Polynomial::variable(setup.ring, n + j * dw + k); };

    // sum_i x_i L_j(r_i) = (sum_i x_i r_i)(sum_k y_{k,j} s_k), coordinate by coordinate.
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t p = 0; p < ell; ++p) {
            Polynomial eq(setup.ring);
            for (std::size_t i = 0; i < n; ++i) {
                Rational alpha = images[i][j].coefficient_of(pivot_monomials[p]);
                if (alpha != 0) eq += x(i) * alpha;
                for (std::size_t k = 0; k < dw; ++k) {
                    Rational beta = products[i][k].coefficient_of(pivot_monomials[p]);
                    if (beta != 0) eq -= x(i) * y(k, j) * beta;
                }
            }
            if (!eq.is_zero()) setup.equations.push_back(std::move(eq));
        }
    return setup;
}

std::vector<Polynomial> chart_equations(const LogdivSetup& setup, std::size_t q) {
    std::vector<Polynomial> eqs = setup.equations;
    for (std::size_t i = 0; i < q; ++i) eqs.push_back(Polynomial::variable(setup.ring, i));
    eqs.push_back(Polynomial::variable(setup.ring, q) - Rational(1));
    return eqs;
}

struct ChartOutcome {
    bool positive_dimensional = false;
    long count = 0;
};

ChartOutcome solve_chart(const LogdivSetup& setup, std::size_t q, const GroebnerOptions& opts) {
    auto ideal = buchberger(setup.ring, chart_equations(setup, q), opts);
    if (ideal.is_unit()) return {};
    if (krull_dim(ideal) != 0) return {true, 0};
    return {false, count_points(ideal, opts).distinct};
}

}  // namespace

std::vector<std::vector<Polynomial>> logdiv_chart_systems(const Subspace& v, const Subspace& w,
                                                          std::span<const Derivation> deltas) {
    auto setup = logdiv_setup(v, w, deltas);
    std::vector<std::vector<Polynomial>> out;
    for (std::size_t q = 0; q < setup.n; ++q) out.push_back(chart_equations(setup, q));
    return out;
}

LogdivResult logdiv_count(const Subspace& v, const Subspace& w, std::span<const Derivation> deltas, unsigned threads,
                          const GroebnerOptions& opts) {
    auto setup = logdiv_setup(v, w, deltas);
    const std::size_t n = setup.n;
    std::vector<ChartOutcome> outcomes(n);
    const std::size_t batch = std::max(1u, threads);
    for (std::size_t start = 0; start < n; start += batch) {
        std::vector<std::future<ChartOutcome>> running;
        for (std::size_t q = start; q < std::min(n, start + batch); ++q)
            running.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred,
                                         [&setup, q, &opts] { return solve_chart(setup, q, opts); }));
        for (std::size_t k = 0; k < running.size(); ++k) outcomes[start + k] = running[k].get();
    }

    LogdivResult out;
    out.ambient_dimension = setup.ambient;
    out.bound = power(Integer(static_cast<unsigned long>(v.dimension())),
                      2 + deltas.size() * w.dimension());
    for (std::size_t q = 0; q < n; ++q) {
        out.chart_counts.push_back(outcomes[q].count);
        out.total += outcomes[q].count;
        if (outcomes[q].positive_dimensional && !out.suspect_chart) out.suspect_chart = q;
    }
    out.uncountable_suspect = out.suspect_chart.has_value();
    out.ok = !out.uncountable_suspect && Integer(out.total) <= out.bound;
    return out;
}

}  // namespace pdga
