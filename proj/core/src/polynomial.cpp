#include "pdga/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "pdga/errors.hpp"

namespace pdga {
namespace {

// Merges two decreasing term lists, the second scaled by `scale` and shifted by `shift`.
std::vector<Polynomial::Term> merge_terms(const VariableRing& ring, std::span<const Polynomial::Term> a,
                                          std::span<const Polynomial::Term> b, const Rational& scale,
                                          const Monomial* shift) {
    std::vector<Polynomial::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    auto shifted = [&](std::size_t k) { return shift ? b[k].monomial * *shift : b[k].monomial; };
    Monomial bm;
    if (j < b.size()) bm = shifted(j);
    while (i < a.size() && j < b.size()) {
        int c = ring.compare(a[i].monomial, bm);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({bm, b[j].coefficient * scale});
            if (++j < b.size()) bm = shifted(j);
        } else {
            Rational s = a[i].coefficient + b[j].coefficient * scale;
            if (s != 0) out.push_back({a[i].monomial, std::move(s)});
            ++i;
            if (++j < b.size()) bm = shifted(j);
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    while (j < b.size()) {
        out.push_back({bm, b[j].coefficient * scale});
        if (++j < b.size()) bm = shifted(j);
    }
    return out;
}

}  // namespace

Polynomial Polynomial::constant(Ring ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (c != 0) p.terms_.push_back({Monomial(p.ring_->size()), c});
    return p;
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
    Polynomial p(std::move(ring));
    p.terms_.push_back({Monomial::unit(p.ring_->size(), index), Rational(1)});
    return p;
}

Polynomial Polynomial::variable(Ring ring, std::string_view name) {
    auto i = ring->require(name);
    return variable(std::move(ring), i);
}

Polynomial Polynomial::monomial(Ring ring, Monomial m, const Rational& c) {
    Polynomial p(std::move(ring));
    if (m.size() != p.ring_->size()) throw RingMismatch("monomial length does not match ring");
    if (c != 0) p.terms_.push_back({std::move(m), c});
    return p;
}

Polynomial Polynomial::from_terms(Ring ring, std::vector<Term> terms) {
    PolynomialBuilder b(std::move(ring));
    for (auto& t : terms) b.add(t.monomial, t.coefficient);
    return b.build();
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coefficient;
    return 0;
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw PreconditionError("leading monomial of the zero polynomial");
    return terms_.front().monomial;
}

const Rational& Polynomial::leading_coefficient() const {
    if (terms_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
    return terms_.front().coefficient;
}

int Polynomial::total_degree() const noexcept {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
}

int Polynomial::degree_in(std::size_t var) const noexcept {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial[var]));
    return d;
}

Rational Polynomial::coefficient_of(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.monomial == m) return t.coefficient;
    return 0;
}

bool Polynomial::uses_variable(std::size_t var) const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[var] != 0; });
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    Rational inv = 1 / terms_.front().coefficient;
    return *this * inv;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
}

void Polynomial::check_ring(const Polynomial& q, const char* op) const {
    if (!same_ring(ring_, q.ring_))
        throw RingMismatch(std::string("ring mismatch in ") + op + ": " + ring_->describe() + " vs " +
                           q.ring_->describe());
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
    check_ring(q, "add");
    terms_ = merge_terms(*ring_, terms_, q.terms_, Rational(1), nullptr);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
    check_ring(q, "sub");
    terms_ = merge_terms(*ring_, terms_, q.terms_, Rational(-1), nullptr);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
    *this = *this * q;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coefficient *= c;
    return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.check_ring(q, "mul");
    if (p.is_zero() || q.is_zero()) return Polynomial(p.ring_);
    if (q.size() == 1) return p.mul_term(q.terms_[0].monomial, q.terms_[0].coefficient);
    if (p.size() == 1) return q.mul_term(p.terms_[0].monomial, p.terms_[0].coefficient);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(p.size() * q.size());
    for (const auto& a : p.terms_)
        for (const auto& b : q.terms_) acc[a.monomial * b.monomial] += a.coefficient * b.coefficient;
    Polynomial r(p.ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.push_back({m, std::move(c)});
    const auto& ring = *p.ring_;
    std::sort(r.terms_.begin(), r.terms_.end(),
              [&](const Polynomial::Term& a, const Polynomial::Term& b) { return ring.compare(a.monomial, b.monomial) > 0; });
    return r;
}

Polynomial operator+(Polynomial p, const Rational& c) { return p += Polynomial::constant(p.ring(), c); }
Polynomial operator-(Polynomial p, const Rational& c) { return p -= Polynomial::constant(p.ring(), c); }

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, t.coefficient * c});
    return r;
}

Polynomial Polynomial::sub_mul_term(const Monomial& m, const Rational& c, const Polynomial& q) const {
    Polynomial r(ring_);
    r.terms_ = merge_terms(*ring_, terms_, q.terms_, Rational(-c), &m);
    return r;
}

Polynomial Polynomial::pow(long exponent) const {
    if (exponent < 0) throw PreconditionError("negative exponent in pow");
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

Polynomial Polynomial::in_ring(const Ring& target) const {
    if (same_ring(ring_, target)) {
        Polynomial r(*this);
        r.ring_ = target;
        return r;
    }
    std::vector<std::size_t> map(ring_->size());
    for (std::size_t i = 0; i < ring_->size(); ++i) {
        auto j = target->index_of(ring_->name(i));
        if (!j) {
            if (uses_variable(i))
                throw RingMismatch("variable '" + ring_->name(i) + "' is not in " + target->describe());
            map[i] = target->size();
        } else {
            map[i] = *j;
        }
    }
    PolynomialBuilder b(target);
    for (const auto& t : terms_) {
        std::vector<Monomial::Exponent> e(target->size(), 0);
        for (std::size_t i = 0; i < ring_->size(); ++i)
            if (t.monomial[i]) e[map[i]] = t.monomial[i];
        b.add(Monomial(std::move(e)), t.coefficient);
    }
    return b.build();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
    if (var >= p.ring()->size()) throw PreconditionError("variable index out of range");
    PolynomialBuilder b(p.ring());
    for (const auto& t : p.terms()) {
        auto e = t.monomial[var];
        if (e == 0) continue;
        b.add(t.monomial.lowered(var), t.coefficient * e);
    }
    return b.build();
}

Polynomial partial_derivative(const Polynomial& p, std::string_view var) {
    return partial_derivative(p, p.ring()->require(var));
}

Polynomial substitute(const Polynomial& p, const Ring& target, std::span<const Polynomial> images) {
    if (images.size() != p.ring()->size()) throw PreconditionError("substitute: wrong number of images");
    for (const auto& img : images)
        if (!same_ring(img.ring(), target)) throw RingMismatch("substitute: image outside the target ring");
    // Powers are cached per variable since the same exponents recur across terms.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t v, std::size_t e) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
        return cache[e];
    };
    PolynomialBuilder b(target);
    for (const auto& t : p.terms()) {
        Polynomial term = Polynomial::constant(target, t.coefficient);
        for (std::size_t v = 0; v < images.size(); ++v)
            if (t.monomial[v]) term = term * power(v, t.monomial[v]);
        b.add(term);
    }
    return b.build();
}

void PolynomialBuilder::add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (m.size() != ring_->size()) throw RingMismatch("monomial length does not match ring");
    terms_.push_back({m, c});
}

void PolynomialBuilder::add(const Polynomial& p, const Rational& scale) {
    if (!same_ring(p.ring(), ring_)) throw RingMismatch("builder: ring mismatch");
    if (scale == 0) return;
    for (const auto& t : p.terms()) terms_.push_back({t.monomial, t.coefficient * scale});
}

Polynomial PolynomialBuilder::build() {
    const auto& ring = *ring_;
    std::sort(terms_.begin(), terms_.end(), [&](const Polynomial::Term& a, const Polynomial::Term& b) {
        return ring.compare(a.monomial, b.monomial) > 0;
    });
    Polynomial p(ring_);
    for (auto& t : terms_) {
        if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
            p.terms_.back().coefficient += t.coefficient;
            if (p.terms_.back().coefficient == 0) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    terms_.clear();
    return p;
}

std::size_t hash_value(const Polynomial& p) {
    std::size_t h = p.size();
    for (const auto& t : p.terms()) {
        h ^= t.monomial.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::hash<std::string>{}(t.coefficient.get_str()) + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace pdga
