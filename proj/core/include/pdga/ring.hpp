#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pdga {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

/// Exponent vector over the variables of a ring.
class Monomial {
public:
    using Exponent = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<Exponent> exps);

    static Monomial unit(std::size_t nvars, std::size_t var, Exponent power = 1);

    std::size_t size() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
    std::span<const Exponent> exponents() const noexcept { return exps_; }
    int degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    Monomial operator*(const Monomial& other) const;
    /// this / other; requires other.divides(*this).
    Monomial operator/(const Monomial& other) const;
    bool divides(const Monomial& other) const noexcept;
    Monomial lcm(const Monomial& other) const;
    bool coprime(const Monomial& other) const noexcept;

    /// Exponent of `var` lowered by one; requires it to be positive.
    Monomial lowered(std::size_t var) const;
    Monomial raised(std::size_t var, Exponent by = 1) const;

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.exps_ == b.exps_; }
    /// Plain lexicographic comparison of exponent vectors; a container order only.
    friend bool operator<(const Monomial& a, const Monomial& b) noexcept { return a.exps_ < b.exps_; }

    std::size_t hash() const noexcept;

private:
    std::vector<Exponent> exps_;
    int degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Term order. `front` is only meaningful for block orders: the named variables
/// form the first (eliminated) block; both blocks are compared by grevlex.
struct MonomialOrder {
    enum class Kind { grevlex, lex, block };

    Kind kind = Kind::grevlex;
    std::set<std::string> front;

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::lex, {}}; }
    static MonomialOrder block(std::set<std::string> front_vars) { return {Kind::block, std::move(front_vars)}; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

std::string to_string(const MonomialOrder& order);

bool is_identifier(std::string_view name);

class VariableRing;
using Ring = std::shared_ptr<const VariableRing>;

/// Q[x1..xn] with a fixed term order. Immutable and shared between polynomials.
class VariableRing {
public:
    static Ring make(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex());

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const MonomialOrder& order() const noexcept { return order_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    /// Throws UnknownVariable (offset 0) when absent.
    std::size_t require(std::string_view name) const;

    /// Three-way comparison under the ring's order: >0 when a is bigger.
    int compare(const Monomial& a, const Monomial& b) const noexcept;

    bool same_as(const VariableRing& other) const noexcept {
        return this == &other || (names_ == other.names_ && order_ == other.order_);
    }

    /// Same variables, different order.
    Ring with_order(MonomialOrder order) const;
    /// Appends variables; each name must be fresh.
    Ring extended(const std::vector<std::string>& extra) const;
    /// Drops the named variables, keeping the remaining ones in their order. The
    /// result uses grevlex unless this ring is lex.
    Ring without(const std::set<std::string>& drop) const;
    /// A name not used by this ring, derived from `stem`.
    std::string fresh_name(std::string_view stem) const;

    std::string describe() const;

private:
    VariableRing(std::vector<std::string> names, MonomialOrder order);

    int grevlex_on(const Monomial& a, const Monomial& b, bool front_block) const noexcept;

    std::vector<std::string> names_;
    MonomialOrder order_;
    std::vector<bool> in_front_;
};

inline bool same_ring(const Ring& a, const Ring& b) noexcept { return a == b || a->same_as(*b); }

}  // namespace pdga
