#include "pdga/algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pdga/errors.hpp"
#include "pdga/parser.hpp"

namespace pdga {

// ---------------------------------------------------------------------------
// UnivariatePolynomial

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UnivariatePolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UnivariatePolynomial UnivariatePolynomial::monic() const {
    if (is_zero()) return *this;
    UnivariatePolynomial r(*this);
    Rational inv = 1 / leading();
    for (auto& c : r.coeffs_) c *= inv;
    return r;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return UnivariatePolynomial(std::move(d));
}

Rational UnivariatePolynomial::evaluate(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UnivariatePolynomial(std::move(out));
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& a,
                                                             const UnivariatePolynomial& b) {
    if (b.is_zero()) throw PreconditionError("univariate division by zero");
    std::vector<Rational> rem = a.coeffs_;
    std::vector<Rational> quo(a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_.size() - b.coeffs_.size() + 1 : 0);
    const int db = b.degree();
    for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
        if (rem[d] == 0) continue;
        Rational f = rem[d] / b.leading();
        quo[d - db] = f;
        for (int k = 0; k <= db; ++k) rem[d - db + k] -= f * b.coeffs_[k];
    }
    return {UnivariatePolynomial(std::move(quo)), UnivariatePolynomial(std::move(rem))};
}

Polynomial UnivariatePolynomial::to_polynomial(const Ring& ring, std::size_t var) const {
    PolynomialBuilder b(ring);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        b.add(Monomial::unit(ring->size(), var, static_cast<Monomial::Exponent>(i)), coeffs_[i]);
    return b.build();
}

std::string UnivariatePolynomial::to_string(const std::string& var) const {
    auto ring = VariableRing::make({var});
    return pdga::to_string(to_polynomial(ring, 0));
}

UnivariatePolynomial gcd(UnivariatePolynomial a, UnivariatePolynomial b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UnivariatePolynomial squarefree_part(const UnivariatePolynomial& p) {
    if (p.degree() <= 0) return p.monic();
    auto g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

namespace {

constexpr unsigned long kDivisorLimit = 1'000'000'000'000ul;

std::optional<std::vector<Integer>> positive_divisors(Integer n) {
    if (n < 0) n = -n;
    if (n > Integer(std::to_string(kDivisorLimit))) return std::nullopt;
    std::vector<std::pair<Integer, int>> factors;
    Integer m = n;
    for (Integer p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) factors.push_back({p, e});
    }
    if (m > 1) factors.push_back({m, 1});
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const UnivariatePolynomial& p) {
    if (p.is_zero()) throw PreconditionError("rational_roots of the zero polynomial");
    // Clear denominators.
    Integer l = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& c : p.coefficients()) ints.push_back(Integer(c * l));
    std::set<Rational> roots;
    std::size_t shift = 0;
    while (shift < ints.size() && ints[shift] == 0) ++shift;
    if (shift > 0) roots.insert(0);
    if (ints.size() - shift <= 1) return std::vector<Rational>(roots.begin(), roots.end());
    auto num_divs = positive_divisors(ints[shift]);
    auto den_divs = positive_divisors(ints.back());
    if (!num_divs || !den_divs) return std::nullopt;
    for (const auto& a : *num_divs)
        for (const auto& b : *den_divs)
            for (int sign : {1, -1}) {
                Rational cand(a * sign, b);
                cand.canonicalize();
                if (p.evaluate(cand) == 0) roots.insert(cand);
            }
    return std::vector<Rational>(roots.begin(), roots.end());
}

// ---------------------------------------------------------------------------
// PresentedAlgebra

PresentedAlgebra::PresentedAlgebra(Ring ring, std::span<const Polynomial> relations, bool domain_claim,
                                   const GroebnerOptions& opts)
    : PresentedAlgebra(buchberger(ring, relations, opts), domain_claim) {}

PresentedAlgebra::PresentedAlgebra(GroebnerBasis presentation, bool domain_claim)
    : state_(std::make_shared<const State>(State{std::move(presentation), domain_claim})) {}

PresentedAlgebra PresentedAlgebra::polynomial_ring(Ring ring, bool domain_claim) {
    return PresentedAlgebra(GroebnerBasis(std::move(ring)), domain_claim);
}

Polynomial PresentedAlgebra::normal_form(const Polynomial& p) const {
    if (presentation().is_zero_ideal()) {
        if (!same_ring(p.ring(), ring())) throw RingMismatch("algebra mismatch: " + p.ring()->describe());
        return p;
    }
    return presentation().normal_form(p);
}

Polynomial PresentedAlgebra::parse(std::string_view text) const { return normal_form(parse_polynomial(text, ring())); }

GroebnerBasis PresentedAlgebra::ideal(std::span<const Polynomial> gens, const GroebnerOptions& opts) const {
    std::vector<Polynomial> all(gens.begin(), gens.end());
    for (const auto& g : presentation().generators()) all.push_back(g);
    return buchberger(ring(), all, opts);
}

GroebnerBasis PresentedAlgebra::lift(const GroebnerBasis& ideal, const GroebnerOptions& opts) const {
    if (!same_ring(ideal.ring(), ring())) throw RingMismatch("ideal is not over the algebra's ring");
    if (ideal.contains(presentation())) return ideal;
    return ideal_sum(ideal, presentation().generators(), opts);
}

bool PresentedAlgebra::same_as(const PresentedAlgebra& other) const {
    return state_ == other.state_ ||
           (same_ring(ring(), other.ring()) && ideal_equal(presentation(), other.presentation()));
}

// ---------------------------------------------------------------------------
// Dimension and zero-dimensional solving

int krull_dim(const GroebnerBasis& ideal) {
    if (ideal.is_unit()) throw PreconditionError("krull_dim of the unit ideal");
    const std::size_t n = ideal.ring()->size();
    std::vector<std::vector<std::size_t>> supports;
    for (const auto& g : ideal.generators()) {
        std::vector<std::size_t> s;
        const auto& lm = g.leading_monomial();
        for (std::size_t i = 0; i < n; ++i)
            if (lm[i]) s.push_back(i);
        supports.push_back(std::move(s));
    }
    std::vector<bool> chosen(n, false);
    auto independent = [&]() {
        for (const auto& s : supports)
            if (std::all_of(s.begin(), s.end(), [&](std::size_t v) { return chosen[v]; })) return false;
        return true;
    };
    int best = 0;
    std::function<void(std::size_t, int)> search = [&](std::size_t v, int size) {
        if (size + static_cast<int>(n - v) <= best) return;
        if (v == n) {
            best = size;
            return;
        }
        chosen[v] = true;
        if (independent()) search(v + 1, size + 1);
        chosen[v] = false;
        search(v + 1, size);
    };
    search(0, 0);
    return best;
}

int krull_dim(const PresentedAlgebra& algebra) { return krull_dim(algebra.presentation()); }

namespace {

std::vector<Monomial> standard_monomials(const GroebnerBasis& ideal) {
    const auto& ring = ideal.ring();
    auto is_standard = [&](const Monomial& m) {
        return std::none_of(ideal.generators().begin(), ideal.generators().end(),
                            [&](const Polynomial& g) { return g.leading_monomial().divides(m); });
    };
    std::set<Monomial> seen;
    std::deque<Monomial> queue{Monomial(ring->size())};
    seen.insert(queue.front());
    std::vector<Monomial> out;
    while (!queue.empty()) {
        Monomial m = queue.front();
        queue.pop_front();
        out.push_back(m);
        for (std::size_t v = 0; v < ring->size(); ++v) {
            Monomial next = m.raised(v);
            if (seen.count(next) || !is_standard(next)) continue;
            seen.insert(next);
            queue.push_back(std::move(next));
        }
    }
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring->compare(a, b) < 0; });
    return out;
}

std::vector<Rational> coordinates(const Polynomial& p, const std::map<Monomial, std::size_t>& index) {
    std::vector<Rational> v(index.size());
    for (const auto& t : p.terms()) v.at(index.at(t.monomial)) = t.coefficient;
    return v;
}

// Minimal polynomial of the element with coordinate vector `start` under the
// repeated action of `step`, found as the first linear dependency among iterates.
UnivariatePolynomial krylov_minimal_polynomial(const std::vector<Rational>& start,
                                               const std::function<std::vector<Rational>(const std::vector<Rational>&)>& step) {
    struct Row {
        std::vector<Rational> vec;
        std::vector<Rational> combo;
        std::size_t pivot;
    };
    std::vector<Row> rows;
    std::vector<Rational> current = start;
    for (std::size_t k = 0;; ++k) {
        std::vector<Rational> vec = current;
        std::vector<Rational> combo(k + 1);
        combo[k] = 1;
        for (const auto& row : rows) {
            const Rational& a = vec[row.pivot];
            if (a == 0) continue;
            Rational f = a / row.vec[row.pivot];
            for (std::size_t i = 0; i < vec.size(); ++i) vec[i] -= f * row.vec[i];
            for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] -= f * row.combo[i];
        }
        auto nz = std::find_if(vec.begin(), vec.end(), [](const Rational& c) { return c != 0; });
        if (nz == vec.end()) return UnivariatePolynomial(std::move(combo)).monic();
        auto pivot = static_cast<std::size_t>(nz - vec.begin());
        rows.push_back({std::move(vec), std::move(combo), pivot});
        current = step(current);
    }
}

}  // namespace

ZeroDimData zero_dim_data(const GroebnerBasis& ideal) {
    if (ideal.is_unit()) throw PreconditionError("zero_dim_data: unit ideal has an empty quotient");
    if (krull_dim(ideal) != 0) throw PreconditionError("zero_dim_data: ideal has positive dimension");
    const auto& ring = ideal.ring();
    ZeroDimData data;
    data.basis = standard_monomials(ideal);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < data.basis.size(); ++i) index.emplace(data.basis[i], i);
    const std::size_t dim = data.basis.size();
    for (std::size_t v = 0; v < ring->size(); ++v) {
        RationalMatrix m(dim, dim);
        for (std::size_t c = 0; c < dim; ++c) {
            auto nf = ideal.normal_form(Polynomial::monomial(ring, data.basis[c].raised(v)));
            auto col = coordinates(nf, index);
            for (std::size_t r = 0; r < dim; ++r) m(r, c) = col[r];
        }
        data.multiplication.push_back(std::move(m));
    }
    std::vector<Rational> one(dim);
    one[0] = 1;  // basis[0] is the monomial 1
    for (std::size_t v = 0; v < ring->size(); ++v) {
        const auto& m = data.multiplication[v];
        auto step = [&](const std::vector<Rational>& x) {
            std::vector<Rational> y(dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    if (x[c] != 0 && m(r, c) != 0) y[r] += m(r, c) * x[c];
            return y;
        };
        data.minimal_polynomials.push_back(krylov_minimal_polynomial(one, step));
    }
    return data;
}

ZeroDimData zero_dim_data(const PresentedAlgebra& algebra) { return zero_dim_data(algebra.presentation()); }

GroebnerBasis zero_dim_radical(const GroebnerBasis& ideal, const GroebnerOptions& opts) {
    if (ideal.is_unit()) return ideal;
    auto data = zero_dim_data(ideal);
    std::vector<Polynomial> extra;
    for (std::size_t v = 0; v < ideal.ring()->size(); ++v)
        extra.push_back(squarefree_part(data.minimal_polynomials[v]).to_polynomial(ideal.ring(), v));
    return ideal_sum(ideal, extra, opts);
}

PointCount count_points(const GroebnerBasis& ideal, const GroebnerOptions& opts) {
    if (ideal.is_unit()) return {0, 0};
    auto data = zero_dim_data(ideal);
    PointCount pc;
    pc.with_multiplicity = static_cast<long>(data.basis.size());
    auto radical = zero_dim_radical(ideal, opts);
    pc.distinct = static_cast<long>(standard_monomials(radical).size());
    return pc;
}

PointCount count_points(const PresentedAlgebra& algebra, const GroebnerOptions& opts) {
    if (algebra.is_unit_algebra()) throw PreconditionError("count_points: unit algebra");
    return count_points(algebra.presentation(), opts);
}

std::optional<std::vector<std::vector<Rational>>> rational_points(const GroebnerBasis& ideal) {
    if (ideal.is_unit()) return std::vector<std::vector<Rational>>{};
    auto data = zero_dim_data(ideal);
    const auto& ring = ideal.ring();
    std::vector<std::vector<Rational>> candidates;
    for (const auto& mp : data.minimal_polynomials) {
        auto roots = rational_roots(mp);
        if (!roots) return std::nullopt;
        if (roots->empty()) return std::vector<std::vector<Rational>>{};
        candidates.push_back(std::move(*roots));
    }
    std::vector<std::vector<Rational>> points;
    std::vector<Rational> point(ring->size());
    std::vector<Polynomial> images;
    Ring empty = VariableRing::make({});
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (v == ring->size()) {
            images.clear();
            for (const auto& c : point) images.push_back(Polynomial::constant(empty, c));
            bool ok = std::all_of(ideal.generators().begin(), ideal.generators().end(), [&](const Polynomial& g) {
                return substitute(g, empty, images).is_zero();
            });
            if (ok) points.push_back(point);
            return;
        }
        for (const auto& c : candidates[v]) {
            point[v] = c;
            walk(v + 1);
        }
    };
    if (ring->size() == 0) return std::vector<std::vector<Rational>>{{}};
    walk(0);
    return points;
}

// ---------------------------------------------------------------------------
// Subspaces

namespace {

struct OrderLess {
    const VariableRing* ring;
    bool operator()(const Monomial& a, const Monomial& b) const { return ring->compare(a, b) < 0; }
};

using Echelon = SparseEchelon<Monomial, OrderLess>;

Echelon::Vector to_vector(const Polynomial& p) {
    Echelon::Vector v(OrderLess{p.ring().get()});
    for (const auto& t : p.terms()) v.emplace(t.monomial, t.coefficient);
    return v;
}

}  // namespace

Subspace Subspace::span(const PresentedAlgebra& algebra, std::span<const Polynomial> elements) {
    Echelon ech(OrderLess{algebra.ring().get()});
    std::vector<Polynomial> basis;
    for (const auto& e : elements) {
        auto nf = algebra.normal_form(e);
        if (nf.is_zero()) continue;
        if (ech.insert(to_vector(nf))) basis.push_back(std::move(nf));
    }
    return Subspace(algebra, std::move(basis));
}

Subspace Subspace::span(const PresentedAlgebra& algebra, std::initializer_list<Polynomial> elements) {
    return span(algebra, std::span<const Polynomial>(elements.begin(), elements.size()));
}

bool Subspace::contains_one() const { return member(Polynomial::constant(algebra_.ring(), 1), *this); }

bool member(const Polynomial& p, const Subspace& space) {
    auto nf = space.algebra().normal_form(p);
    if (nf.is_zero()) return true;
    Echelon ech(OrderLess{space.algebra().ring().get()});
    for (const auto& b : space.basis()) ech.insert(to_vector(b));
    return ech.contains(to_vector(nf));
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
    std::vector<Monomial> out;
    std::vector<Monomial::Exponent> exps(nvars, 0);
    std::function<void(std::size_t, int)> fill = [&](std::size_t v, int left) {
        if (v + 1 >= nvars) {
            if (nvars > 0) exps[nvars - 1] = static_cast<Monomial::Exponent>(left);
            if (nvars > 0 || left == 0) out.emplace_back(exps);
            return;
        }
        for (int e = left; e >= 0; --e) {
            exps[v] = static_cast<Monomial::Exponent>(e);
            fill(v + 1, left - e);
        }
    };
    for (int k = 0; k <= degree; ++k) fill(0, k);
    return out;
}

RationalMatrix coefficient_matrix(std::span<const Polynomial> elements, std::vector<Monomial>& support) {
    std::map<Monomial, std::size_t> index;
    for (const auto& m : support) index.emplace(m, index.size());
    for (const auto& e : elements)
        for (const auto& t : e.terms())
            if (!index.count(t.monomial)) {
                index.emplace(t.monomial, support.size());
                support.push_back(t.monomial);
            }
    RationalMatrix m(elements.size(), support.size());
    for (std::size_t r = 0; r < elements.size(); ++r)
        for (const auto& t : elements[r].terms()) m(r, index.at(t.monomial)) = t.coefficient;
    return m;
}

Subspace ideal_cap_subspace(const GroebnerBasis& ideal, const Subspace& space) {
    const auto& algebra = space.algebra();
    auto lifted = algebra.lift(ideal);
    std::vector<Polynomial> images;
    for (const auto& b : space.basis()) images.push_back(lifted.normal_form(b));
    std::vector<Monomial> support;
    RationalMatrix rows = coefficient_matrix(images, support);
    // Kernel of the map c -> sum c_j images_j: columns are the basis elements.
    RationalMatrix map(support.size(), images.size());
    for (std::size_t r = 0; r < images.size(); ++r)
        for (std::size_t c = 0; c < support.size(); ++c) map(c, r) = rows(r, c);
    std::vector<Polynomial> kernel_elems;
    for (const auto& vec : map.kernel()) {
        PolynomialBuilder b(algebra.ring());
        for (std::size_t j = 0; j < vec.size(); ++j) b.add(space.basis()[j], vec[j]);
        kernel_elems.push_back(b.build());
    }
    return Subspace::span(algebra, kernel_elems);
}

Subspace span_product(const Subspace& a, const Subspace& b) {
    if (!a.algebra().same_as(b.algebra())) throw RingMismatch("span_product: different algebras");
    std::vector<Polynomial> products;
    products.reserve(a.dimension() * b.dimension());
    for (const auto& x : a.basis())
        for (const auto& y : b.basis()) products.push_back(x * y);
    return Subspace::span(a.algebra(), products);
}

Subspace span_power(const Subspace& space, int n) {
    if (n < 1) throw PreconditionError("span_power: n must be positive");
    Subspace acc = space;
    for (int k = 2; k <= n; ++k) acc = span_product(acc, space);
    return acc;
}

std::vector<std::size_t> span_power_dimensions(const Subspace& space, int n_max) {
    if (n_max < 1) throw PreconditionError("span_power_dimensions: n_max must be positive");
    std::vector<std::size_t> dims;
    Subspace acc = space;
    dims.push_back(acc.dimension());
    for (int k = 2; k <= n_max; ++k) {
        acc = span_product(acc, space);
        dims.push_back(acc.dimension());
    }
    return dims;
}

}  // namespace pdga
