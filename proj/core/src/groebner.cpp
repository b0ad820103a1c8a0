#include "pdga/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "pdga/errors.hpp"
#include "pdga/parser.hpp"

namespace pdga {
namespace {

std::atomic<int> g_degree_cap{64};

struct Descending {
    const VariableRing* ring;
    bool operator()(const Monomial& a, const Monomial& b) const { return ring->compare(a, b) > 0; }
};

using WorkPoly = std::map<Monomial, Rational, Descending>;

void check_degree(const Polynomial& p, const GroebnerOptions& opts) {
    int d = p.total_degree();
    if (d > opts.degree_cap) throw DegreeGuardExceeded(d, opts.degree_cap);
}

const Polynomial* find_reducer(const Monomial& m, std::span<const Polynomial* const> basis) {
    for (const Polynomial* g : basis)
        if (g->leading_monomial().divides(m)) return g;
    return nullptr;
}

// Full reduction of p by monic divisors.
Polynomial reduce_full(const Polynomial& p, std::span<const Polynomial* const> basis) {
    if (p.is_zero() || basis.empty()) return p;
    const auto& ring = p.ring();
    WorkPoly work(Descending{ring.get()});
    for (const auto& t : p.terms()) work.emplace(t.monomial, t.coefficient);
    PolynomialBuilder rest(ring);
    while (!work.empty()) {
        auto it = work.begin();
        Monomial m = it->first;
        Rational c = it->second;
        work.erase(it);
        const Polynomial* g = find_reducer(m, basis);
        if (!g) {
            rest.add(m, c);
            continue;
        }
        Monomial shift = m / g->leading_monomial();
        Rational scale = c / g->leading_coefficient();
        auto terms = g->terms();
        for (std::size_t k = 1; k < terms.size(); ++k) {
            Monomial mm = terms[k].monomial * shift;
            auto [pos, inserted] = work.try_emplace(std::move(mm), 0);
            pos->second -= scale * terms[k].coefficient;
            if (pos->second == 0) work.erase(pos);
        }
    }
    return rest.build();
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

class BuchbergerRun {
public:
    BuchbergerRun(Ring ring, const GroebnerOptions& opts) : ring_(std::move(ring)), opts_(opts) {}

    void add_input(Polynomial f) {
        f = reduce_by_active(f);
        if (f.is_zero()) return;
        insert(f.monic());
    }

    void run() {
        while (!pairs_.empty() && !unit_) {
            auto best = select();
            Pair p = pairs_[best];
            pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
            Polynomial s = s_polynomial(basis_[p.i], basis_[p.j]);
            check_degree(s, opts_);
            Polynomial r = reduce_by_active(s);
            if (r.is_zero()) continue;
            check_degree(r, opts_);
            insert(r.monic());
        }
    }

    std::vector<Polynomial> reduced() const {
        if (unit_) return {Polynomial::constant(ring_, 1)};
        std::vector<Polynomial> gens;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (active_[i]) gens.push_back(basis_[i]);
        // Leading monomials are already pairwise non-divisible; tail-reduce each.
        std::vector<Polynomial> out;
        out.reserve(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::vector<const Polynomial*> others;
            for (std::size_t k = 0; k < gens.size(); ++k)
                if (k != i) others.push_back(&gens[k]);
            const auto& lead = gens[i].terms().front();
            Polynomial tail = gens[i] - Polynomial::monomial(ring_, lead.monomial, lead.coefficient);
            Polynomial reduced_tail = reduce_full(tail, others);
            out.push_back(Polynomial::monomial(ring_, lead.monomial, lead.coefficient) + reduced_tail);
        }
        std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
            return ring_->compare(a.leading_monomial(), b.leading_monomial()) < 0;
        });
        return out;
    }

private:
    Polynomial reduce_by_active(const Polynomial& p) const {
        std::vector<const Polynomial*> act;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (active_[i]) act.push_back(&basis_[i]);
        return reduce_full(p, act);
    }

    std::size_t select() const {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k) {
            int c = ring_->compare(pairs_[k].lcm, pairs_[best].lcm);
            if (c < 0 || (c == 0 && std::tie(pairs_[k].j, pairs_[k].i) < std::tie(pairs_[best].j, pairs_[best].i)))
                best = k;
        }
        return best;
    }

    // Gebauer-Moeller update.
    void insert(Polynomial h) {
        if (h.is_constant()) {
            unit_ = true;
            return;
        }
        const Monomial lm_h = h.leading_monomial();
        const std::size_t k = basis_.size();

        std::vector<Pair> candidates;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (active_[i]) candidates.push_back({i, k, basis_[i].leading_monomial().lcm(lm_h)});

        std::vector<bool> keep(candidates.size(), true);
        for (std::size_t a = 0; a < candidates.size(); ++a) {
            if (basis_[candidates[a].i].leading_monomial().coprime(lm_h)) continue;
            for (std::size_t b = 0; b < candidates.size(); ++b) {
                if (a == b || !keep[b]) continue;
                const auto& la = candidates[a].lcm;
                const auto& lb = candidates[b].lcm;
                if (lb.divides(la) && (!(lb == la) || b < a)) {
                    keep[a] = false;
                    break;
                }
            }
        }
        std::vector<Pair> fresh;
        for (std::size_t a = 0; a < candidates.size(); ++a) {
            if (!keep[a]) continue;
            if (basis_[candidates[a].i].leading_monomial().coprime(lm_h)) continue;
            fresh.push_back(candidates[a]);
        }

        std::erase_if(pairs_, [&](const Pair& p) {
            if (!lm_h.divides(p.lcm)) return false;
            auto li = basis_[p.i].leading_monomial().lcm(lm_h);
            auto lj = basis_[p.j].leading_monomial().lcm(lm_h);
            return !(li == p.lcm) && !(lj == p.lcm);
        });
        pairs_.insert(pairs_.end(), fresh.begin(), fresh.end());

        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (active_[i] && lm_h.divides(basis_[i].leading_monomial())) active_[i] = false;
        basis_.push_back(std::move(h));
        active_.push_back(true);
    }

    Ring ring_;
    GroebnerOptions opts_;
    std::vector<Polynomial> basis_;
    std::vector<bool> active_;
    std::vector<Pair> pairs_;
    bool unit_ = false;
};

// Process-wide memo of reduced bases keyed by ring and sorted input generators.
class BasisCache {
public:
    std::optional<std::vector<Polynomial>> find(const std::string& key) {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void store(const std::string& key, const std::vector<Polynomial>& gens) {
        std::lock_guard lock(mutex_);
        if (entries_.size() >= kCapacity) entries_.clear();
        entries_.emplace(key, gens);
    }

    void clear() {
        std::lock_guard lock(mutex_);
        entries_.clear();
    }

private:
    static constexpr std::size_t kCapacity = 4096;
    std::mutex mutex_;
    std::unordered_map<std::string, std::vector<Polynomial>> entries_;
};

BasisCache& cache() {
    static BasisCache instance;
    return instance;
}

std::string cache_key(const Ring& ring, std::span<const Polynomial> gens, const GroebnerOptions& opts) {
    std::vector<std::string> parts;
    parts.reserve(gens.size());
    for (const auto& g : gens) parts.push_back(to_string(g.monic()));
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::string key = ring->describe() + "|" + std::to_string(opts.degree_cap);
    for (const auto& p : parts) key += "|" + p;
    return key;
}

}  // namespace

int default_degree_cap() noexcept { return g_degree_cap.load(); }
void set_default_degree_cap(int cap) noexcept { g_degree_cap.store(cap); }

void clear_groebner_cache() { cache().clear(); }

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
    if (!same_ring(p.ring(), ring_))
        throw RingMismatch("normal_form: " + p.ring()->describe() + " vs " + ring_->describe());
    std::vector<const Polynomial*> basis;
    basis.reserve(gens_.size());
    for (const auto& g : gens_) basis.push_back(&g);
    return reduce_full(p, basis);
}

bool GroebnerBasis::contains(const GroebnerBasis& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(),
                       [&](const Polynomial& g) { return contains(g.in_ring(ring_)); });
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return ideal_equal(a, b); }

GroebnerBasis buchberger(const Ring& ring, std::span<const Polynomial> gens, const GroebnerOptions& opts) {
    std::vector<Polynomial> inputs;
    inputs.reserve(gens.size());
    for (const auto& g : gens) {
        auto p = g.in_ring(ring);
        if (!p.is_zero()) inputs.push_back(std::move(p));
    }
    if (inputs.empty()) return GroebnerBasis(ring);
    auto key = cache_key(ring, inputs, opts);
    if (auto hit = cache().find(key)) return GroebnerBasis(ring, std::move(*hit));

    for (const auto& p : inputs) check_degree(p, opts);
    // Smaller inputs first keeps the run deterministic and usually cheaper.
    std::stable_sort(inputs.begin(), inputs.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    BuchbergerRun run(ring, opts);
    for (auto& p : inputs) run.add_input(std::move(p));
    run.run();
    auto reduced = run.reduced();
    cache().store(key, reduced);
    return GroebnerBasis(ring, std::move(reduced));
}

GroebnerBasis buchberger(std::span<const Polynomial> gens, const MonomialOrder& order, const GroebnerOptions& opts) {
    if (gens.empty()) throw PreconditionError("buchberger: cannot infer the ring from an empty generator list");
    return buchberger(gens.front().ring()->with_order(order), gens, opts);
}

GroebnerBasis buchberger(const Ring& ring, std::initializer_list<Polynomial> gens, const GroebnerOptions& opts) {
    return buchberger(ring, std::span<const Polynomial>(gens.begin(), gens.size()), opts);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) { return gb.normal_form(p); }

bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
    if (!same_ring(a.ring(), b.ring())) throw RingMismatch("ideal_equal: ring or order mismatch");
    auto ga = a.generators();
    auto gb = b.generators();
    return std::equal(ga.begin(), ga.end(), gb.begin(), gb.end());
}

GroebnerBasis ideal_sum(const GroebnerBasis& ideal, std::span<const Polynomial> extra, const GroebnerOptions& opts) {
    std::vector<Polynomial> gens(ideal.generators().begin(), ideal.generators().end());
    for (const auto& e : extra) gens.push_back(e.in_ring(ideal.ring()));
    return buchberger(ideal.ring(), gens, opts);
}

GroebnerBasis eliminate(const GroebnerBasis& ideal, const std::set<std::string>& drop, const GroebnerOptions& opts) {
    const auto& ring = ideal.ring();
    for (const auto& d : drop)
        if (!ring->index_of(d)) throw UnknownVariable(d, 0);
    Ring target = ring->without(drop);
    if (drop.empty()) return buchberger(target, ideal.generators(), opts);
    Ring blocked = ring->with_order(MonomialOrder::block(drop));
    auto gb = buchberger(blocked, ideal.generators(), opts);
    std::vector<std::size_t> dropped;
    for (const auto& d : drop) dropped.push_back(*ring->index_of(d));
    std::vector<Polynomial> kept;
    for (const auto& g : gb.generators()) {
        bool uses = std::any_of(dropped.begin(), dropped.end(), [&](std::size_t v) { return g.uses_variable(v); });
        if (!uses) kept.push_back(g.in_ring(target));
    }
    return buchberger(target, kept, opts);
}

GroebnerBasis intersect(const GroebnerBasis& a, const GroebnerBasis& b, const GroebnerOptions& opts) {
    if (!same_ring(a.ring(), b.ring())) throw RingMismatch("intersect: ring mismatch");
    if (a.is_zero_ideal() || b.is_zero_ideal()) return GroebnerBasis(a.ring());
    if (a.is_unit()) return b;
    if (b.is_unit()) return a;
    const auto& ring = a.ring();
    std::string t = ring->fresh_name("_t");
    Ring ext = ring->extended({t});
    Polynomial tv = Polynomial::variable(ext, ring->size());
    Polynomial one_minus_t = Polynomial::constant(ext, 1) - tv;
    std::vector<Polynomial> gens;
    for (const auto& f : a.generators()) gens.push_back(tv * f.in_ring(ext));
    for (const auto& g : b.generators()) gens.push_back(one_minus_t * g.in_ring(ext));
    auto elim = eliminate(buchberger(ext, gens, opts), {t}, opts);
    std::vector<Polynomial> back;
    for (const auto& g : elim.generators()) back.push_back(g.in_ring(ring));
    return buchberger(ring, back, opts);
}

GroebnerBasis intersect_all(std::span<const GroebnerBasis> ideals, const GroebnerOptions& opts) {
    if (ideals.empty()) throw PreconditionError("intersect_all: empty family");
    GroebnerBasis acc = ideals.front();
    for (std::size_t i = 1; i < ideals.size(); ++i) acc = intersect(acc, ideals[i], opts);
    return acc;
}

bool radical_member(const Polynomial& p, const GroebnerBasis& ideal, const GroebnerOptions& opts) {
    const auto& ring = ideal.ring();
    if (!same_ring(p.ring(), ring)) throw RingMismatch("radical_member: ring mismatch");
    if (ideal.contains(p)) return true;
    std::string z = ring->fresh_name("_z");
    Ring ext = ring->extended({z});
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(g.in_ring(ext));
    Polynomial zv = Polynomial::variable(ext, ring->size());
    gens.push_back(Polynomial::constant(ext, 1) - zv * p.in_ring(ext));
    return buchberger(ext, gens, opts).is_unit();
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const auto& lf = f.leading_monomial();
    const auto& lg = g.leading_monomial();
    Monomial l = lf.lcm(lg);
    Polynomial a = f.mul_term(l / lf, 1 / f.leading_coefficient());
    return a.sub_mul_term(l / lg, 1 / g.leading_coefficient(), g);
}

bool all_s_pairs_reduce(const GroebnerBasis& gb) {
    auto gens = gb.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!gb.normal_form(s_polynomial(gens[i], gens[j])).is_zero()) return false;
    return true;
}

std::vector<std::string> to_strings(const GroebnerBasis& gb) {
    std::vector<std::string> out;
    for (const auto& g : gb.generators()) out.push_back(to_string(g));
    return out;
}

// ---------------------------------------------------------------------------
// Module Groebner bases over R^{m+r} with position-over-term order; the first m
// positions carry values, the last r carry the coefficient tags.

namespace {

struct ModuleElement {
    ModuleVector comps;

    std::optional<std::size_t> lead_pos() const {
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!comps[i].is_zero()) return i;
        return std::nullopt;
    }
};

ModuleElement scaled_shift(const ModuleElement& e, const Monomial& m, const Rational& c) {
    ModuleElement out;
    out.comps.reserve(e.comps.size());
    for (const auto& p : e.comps) out.comps.push_back(p.mul_term(m, c));
    return out;
}

void subtract(ModuleElement& a, const ModuleElement& b, const Monomial& m, const Rational& c) {
    for (std::size_t i = 0; i < a.comps.size(); ++i)
        if (!b.comps[i].is_zero()) a.comps[i] = a.comps[i].sub_mul_term(m, c, b.comps[i]);
}

void check_degree(const ModuleElement& e, const GroebnerOptions& opts) {
    for (const auto& p : e.comps) check_degree(p, opts);
}

class ModuleRun {
public:
    explicit ModuleRun(const GroebnerOptions& opts) : opts_(opts) {}

    void add(ModuleElement e) {
        top_reduce(e);
        if (e.lead_pos()) insert(std::move(e));
    }

    void run() {
        while (!pairs_.empty()) {
            auto [i, j] = pairs_.front();
            pairs_.erase(pairs_.begin());
            ModuleElement s = spair(basis_[i], basis_[j]);
            check_degree(s, opts_);
            top_reduce(s);
            if (!s.lead_pos()) continue;
            check_degree(s, opts_);
            insert(std::move(s));
        }
    }

    const std::vector<ModuleElement>& basis() const { return basis_; }

private:
    static const Polynomial& lead_poly(const ModuleElement& e) { return e.comps[*e.lead_pos()]; }

    ModuleElement spair(const ModuleElement& a, const ModuleElement& b) const {
        const auto& pa = lead_poly(a);
        const auto& pb = lead_poly(b);
        Monomial l = pa.leading_monomial().lcm(pb.leading_monomial());
        ModuleElement s = scaled_shift(a, l / pa.leading_monomial(), 1 / pa.leading_coefficient());
        subtract(s, b, l / pb.leading_monomial(), 1 / pb.leading_coefficient());
        return s;
    }

    void top_reduce(ModuleElement& e) const {
        for (;;) {
            auto pos = e.lead_pos();
            if (!pos) return;
            const auto& lp = e.comps[*pos];
            const ModuleElement* red = nullptr;
            for (const auto& b : basis_) {
                if (b.lead_pos() != pos) continue;
                if (lead_poly(b).leading_monomial().divides(lp.leading_monomial())) {
                    red = &b;
                    break;
                }
            }
            if (!red) return;
            const auto& rp = lead_poly(*red);
            Monomial shift = lp.leading_monomial() / rp.leading_monomial();
            Rational c = lp.leading_coefficient() / rp.leading_coefficient();
            subtract(e, *red, shift, c);
        }
    }

    void insert(ModuleElement e) {
        // Normalize so the leading coefficient is 1.
        Rational inv = 1 / lead_poly(e).leading_coefficient();
        for (auto& p : e.comps) p *= inv;
        std::size_t k = basis_.size();
        auto pos = e.lead_pos();
        for (std::size_t i = 0; i < k; ++i)
            if (basis_[i].lead_pos() == pos) pairs_.push_back({i, k});
        basis_.push_back(std::move(e));
    }

    GroebnerOptions opts_;
    std::vector<ModuleElement> basis_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

}  // namespace

std::vector<ModuleVector> module_solve_rows(std::span<const ModuleVector> rows, const GroebnerBasis& ideal,
                                            const GroebnerOptions& opts) {
    if (rows.empty()) throw PreconditionError("module_solve: no rows");
    const auto& ring = ideal.ring();
    const std::size_t m = rows.size();
    const std::size_t r = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != r) throw PreconditionError("module_solve: ragged rows");
        for (const auto& p : row)
            if (!same_ring(p.ring(), ring)) throw RingMismatch("module_solve: ring mismatch");
    }
    ModuleRun run(opts);
    for (std::size_t i = 0; i < r; ++i) {
        ModuleElement e;
        for (std::size_t k = 0; k < m; ++k) e.comps.push_back(rows[k][i]);
        for (std::size_t t = 0; t < r; ++t)
            e.comps.push_back(t == i ? Polynomial::constant(ring, 1) : Polynomial(ring));
        run.add(std::move(e));
    }
    for (std::size_t k = 0; k < m; ++k) {
        for (const auto& g : ideal.generators()) {
            ModuleElement e;
            for (std::size_t c = 0; c < m + r; ++c) e.comps.push_back(c == k ? g : Polynomial(ring));
            run.add(std::move(e));
        }
    }
    run.run();

    struct Lead {
        std::size_t pos;
        Monomial mono;
    };
    std::vector<std::pair<Lead, ModuleVector>> kernel;
    for (const auto& e : run.basis()) {
        auto pos = e.lead_pos();
        if (!pos || *pos < m) continue;
        ModuleVector h(e.comps.begin() + static_cast<std::ptrdiff_t>(m), e.comps.end());
        kernel.push_back({{*pos, e.comps[*pos].leading_monomial()}, std::move(h)});
    }
    // Drop elements whose leading term is divisible by another's.
    std::vector<ModuleVector> out;
    for (std::size_t a = 0; a < kernel.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < kernel.size() && !redundant; ++b) {
            if (a == b || kernel[a].first.pos != kernel[b].first.pos) continue;
            const auto& ma = kernel[a].first.mono;
            const auto& mb = kernel[b].first.mono;
            if (mb.divides(ma) && (!(ma == mb) || b < a)) redundant = true;
        }
        if (!redundant) out.push_back(kernel[a].second);
    }
    return out;
}

std::vector<ModuleVector> module_solve(std::span<const Polynomial> f, const GroebnerBasis& ideal,
                                       const GroebnerOptions& opts) {
    std::vector<ModuleVector> rows{ModuleVector(f.begin(), f.end())};
    return module_solve_rows(rows, ideal, opts);
}

}  // namespace pdga
