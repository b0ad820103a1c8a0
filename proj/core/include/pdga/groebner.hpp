#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "pdga/polynomial.hpp"

namespace pdga {

/// Hard cap on the total degree of any intermediate polynomial produced during a
/// Groebner computation. Exceeding it raises DegreeGuardExceeded.
int default_degree_cap() noexcept;
void set_default_degree_cap(int cap) noexcept;

/// Drops every memoized basis.
void clear_groebner_cache();

struct GroebnerOptions {
    int degree_cap = default_degree_cap();
};

/// A reduced, monic Groebner basis. The term order is the ring's order.
class GroebnerBasis {
public:
    /// The zero ideal of `ring`.
    explicit GroebnerBasis(Ring ring) : ring_(std::move(ring)) {}

    const Ring& ring() const noexcept { return ring_; }
    std::span<const Polynomial> generators() const noexcept { return gens_; }
    std::size_t size() const noexcept { return gens_.size(); }

    bool is_zero_ideal() const noexcept { return gens_.empty(); }
    bool is_unit() const noexcept { return gens_.size() == 1 && gens_[0].is_constant(); }

    Polynomial normal_form(const Polynomial& p) const;
    bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
    /// Every generator of `other` lies in this ideal.
    bool contains(const GroebnerBasis& other) const;

    friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);

private:
    friend GroebnerBasis buchberger(const Ring&, std::span<const Polynomial>, const GroebnerOptions&);
    GroebnerBasis(Ring ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {}

    Ring ring_;
    std::vector<Polynomial> gens_;
};

/// Buchberger's algorithm with the Gebauer-Moeller pair criteria and the normal
/// selection strategy. Generators are converted into `ring` by variable name.
GroebnerBasis buchberger(const Ring& ring, std::span<const Polynomial> gens, const GroebnerOptions& opts = {});
/// Same ideal under another term order.
GroebnerBasis buchberger(std::span<const Polynomial> gens, const MonomialOrder& order,
                         const GroebnerOptions& opts = {});
GroebnerBasis buchberger(const Ring& ring, std::initializer_list<Polynomial> gens, const GroebnerOptions& opts = {});

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

/// True iff both reduced bases coincide. Requires identical ring and order.
bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b);

/// I + <extra>.
GroebnerBasis ideal_sum(const GroebnerBasis& ideal, std::span<const Polynomial> extra,
                        const GroebnerOptions& opts = {});

/// I intersected with the subring omitting `drop`, returned in that smaller ring.
GroebnerBasis eliminate(const GroebnerBasis& ideal, const std::set<std::string>& drop,
                        const GroebnerOptions& opts = {});

GroebnerBasis intersect(const GroebnerBasis& a, const GroebnerBasis& b, const GroebnerOptions& opts = {});
/// Intersection of a nonempty family.
GroebnerBasis intersect_all(std::span<const GroebnerBasis> ideals, const GroebnerOptions& opts = {});

/// Whether some power of p lies in I (Rabinowitsch trick).
bool radical_member(const Polynomial& p, const GroebnerBasis& ideal, const GroebnerOptions& opts = {});

/// Element of a free module R^r.
using ModuleVector = std::vector<Polynomial>;

/// Generators of {h in R^r : sum_i h_i f_i in J}.
std::vector<ModuleVector> module_solve(std::span<const Polynomial> f, const GroebnerBasis& ideal,
                                       const GroebnerOptions& opts = {});

/// Generators of {h in R^r : sum_i h_i rows[k][i] in J for every row k}. All rows
/// have length r.
std::vector<ModuleVector> module_solve_rows(std::span<const ModuleVector> rows, const GroebnerBasis& ideal,
                                            const GroebnerOptions& opts = {});

/// S-polynomial of two polynomials with the same ring.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Verification pass used by tests and certificates: every S-polynomial of
/// generator pairs reduces to zero.
bool all_s_pairs_reduce(const GroebnerBasis& gb);

std::vector<std::string> to_strings(const GroebnerBasis& gb);

}  // namespace pdga
