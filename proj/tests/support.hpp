#pragma once

#include <doctest.h>

#include <initializer_list>
#include <map>
#include <span>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pdga/pdga.hpp"

namespace pdga::test {

inline Ring ring_of(std::vector<std::string> names) { return VariableRing::make(std::move(names)); }

inline Polynomial P(const Ring& r, std::string_view text) { return parse_polynomial(text, r); }

inline std::vector<Polynomial> Ps(const Ring& r, std::initializer_list<std::string_view> texts) {
    std::vector<Polynomial> out;
    for (auto t : texts) out.push_back(parse_polynomial(t, r));
    return out;
}

inline GroebnerBasis ideal(const Ring& r, std::initializer_list<std::string_view> texts) {
    return buchberger(r, Ps(r, texts));
}

inline std::string str(const Polynomial& p) { return to_string(p); }

// Term-by-term evaluation; deliberately does not go through substitute().
inline Rational eval(const Polynomial& p, const std::vector<Rational>& point) {
    Rational acc = 0;
    for (const auto& t : p.terms()) {
        Rational v = t.coefficient;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (Monomial::Exponent e = 0; e < t.monomial[i]; ++e) v *= point[i];
        acc += v;
    }
    return acc;
}

inline Rational random_rational(std::mt19937_64& rng, int num = 9, int den = 4) {
    std::uniform_int_distribution<int> n(-num, num), d(1, den);
    Rational q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
    std::vector<Monomial::Exponent> e(nvars, 0);
    int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    return Monomial(std::move(e));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, const Ring& r, int max_degree, int max_terms) {
    std::uniform_int_distribution<int> count(0, max_terms);
    PolynomialBuilder b(r);
    int k = count(rng);
    for (int i = 0; i < k; ++i) b.add(random_monomial(rng, r->size(), max_degree), random_rational(rng));
    return b.build();
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(random_rational(rng, 7, 3));
    return pt;
}

// Naive multivariate division: repeatedly cancel the largest divisible term.
// Independent of the library's reduction loop; used as an oracle.
inline Polynomial naive_remainder(Polynomial p, std::span<const Polynomial> divisors) {
    const auto& ring = p.ring();
    Polynomial rem(ring);
    while (!p.is_zero()) {
        const auto& lm = p.leading_monomial();
        const auto lc = p.leading_coefficient();
        bool divided = false;
        for (const auto& g : divisors) {
            if (g.leading_monomial().divides(lm)) {
                p -= g * Polynomial::monomial(ring, lm / g.leading_monomial(), lc / g.leading_coefficient());
                divided = true;
                break;
            }
        }
        if (!divided) {
            rem += Polynomial::monomial(ring, lm, lc);
            p -= Polynomial::monomial(ring, lm, lc);
        }
    }
    return rem;
}

// Buchberger criterion checked with the naive division above.
inline bool is_groebner_oracle(const GroebnerBasis& gb) {
    auto g = gb.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const auto& a = g[i];
            const auto& b = g[j];
            Monomial l = a.leading_monomial().lcm(b.leading_monomial());
            const auto& ring = a.ring();
            auto s = a * Polynomial::monomial(ring, l / a.leading_monomial(), 1 / a.leading_coefficient()) -
                     b * Polynomial::monomial(ring, l / b.leading_monomial(), 1 / b.leading_coefficient());
            if (!naive_remainder(s, g).is_zero()) return false;
        }
    return true;
}

// Number of distinct geometric points of a zero-dimensional ideal, as the rank of
// the trace form Tr(m_{b_i b_j}) on the quotient (Hermite). Independent of the
// radical-based count in the library.
inline long hermite_distinct_count(const GroebnerBasis& ideal) {
    auto data = zero_dim_data(ideal);
    const std::size_t n = data.basis.size();
    const auto& ring = ideal.ring();
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(data.basis[i], i);
    auto trace_of = [&](const Polynomial& f) {
        // Trace of multiplication by f on the quotient.
        Rational tr = 0;
        for (std::size_t c = 0; c < n; ++c) {
            auto img = ideal.normal_form(f * Polynomial::monomial(ring, data.basis[c]));
            tr += img.coefficient_of(data.basis[c]);
        }
        return tr;
    };
    RationalMatrix form(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto t = trace_of(Polynomial::monomial(ring, data.basis[i] * data.basis[j]));
            form(i, j) = t;
            form(j, i) = t;
        }
    return static_cast<long>(form.rank());
}

}  // namespace pdga::test
