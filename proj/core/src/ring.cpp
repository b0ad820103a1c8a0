#include "pdga/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "pdga/errors.hpp"

namespace pdga {

std::string to_string(const Rational& q) { return q.get_str(); }

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
    degree_ = static_cast<int>(std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0}));
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, Exponent power) {
    Monomial m(nvars);
    m.exps_.at(var) = power;
    m.degree_ = static_cast<int>(power);
    return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    r.degree_ = degree_ + other.degree_;
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
    r.degree_ = degree_ - other.degree_;
    return r;
}

bool Monomial::divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
    std::vector<Exponent> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
    return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
}

Monomial Monomial::lowered(std::size_t var) const {
    Monomial r(*this);
    --r.exps_.at(var);
    --r.degree_;
    return r;
}

Monomial Monomial::raised(std::size_t var, Exponent by) const {
    Monomial r(*this);
    r.exps_.at(var) += by;
    r.degree_ += static_cast<int>(by);
    return r;
}

std::size_t Monomial::hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) {
        h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

std::string to_string(const MonomialOrder& order) {
    switch (order.kind) {
        case MonomialOrder::Kind::grevlex: return "grevlex";
        case MonomialOrder::Kind::lex: return "lex";
        case MonomialOrder::Kind::block: {
            std::string s = "block(";
            bool first = true;
            for (const auto& v : order.front) {
                if (!first) s += ",";
                s += v;
                first = false;
            }
            return s + ")";
        }
    }
    return "?";
}

bool is_identifier(std::string_view name) {
    if (name.empty()) return false;
    auto head = static_cast<unsigned char>(name.front());
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

VariableRing::VariableRing(std::vector<std::string> names, MonomialOrder order)
    : names_(std::move(names)), order_(std::move(order)), in_front_(names_.size(), false) {
    for (std::size_t i = 0; i < names_.size(); ++i) in_front_[i] = order_.front.count(names_[i]) > 0;
}

Ring VariableRing::make(std::vector<std::string> names, MonomialOrder order) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (!is_identifier(n)) throw PreconditionError("invalid variable name '" + n + "'");
        if (!seen.insert(n).second) throw PreconditionError("duplicate variable name '" + n + "'");
    }
    if (order.kind == MonomialOrder::Kind::block) {
        for (const auto& f : order.front)
            if (!seen.count(f)) throw PreconditionError("block order names unknown variable '" + f + "'");
    } else {
        order.front.clear();
    }
    return Ring(new VariableRing(std::move(names), std::move(order)));
}

std::optional<std::size_t> VariableRing::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t VariableRing::require(std::string_view name) const {
    if (auto i = index_of(name)) return *i;
    throw UnknownVariable(std::string(name), 0);
}

int VariableRing::grevlex_on(const Monomial& a, const Monomial& b, bool front_block) const noexcept {
    long da = 0, db = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (in_front_[i] != front_block) continue;
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = names_.size(); i-- > 0;) {
        if (in_front_[i] != front_block) continue;
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

int VariableRing::compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (order_.kind) {
        case MonomialOrder::Kind::grevlex: {
            if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
            for (std::size_t i = names_.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
            return 0;
        }
        case MonomialOrder::Kind::lex:
            for (std::size_t i = 0; i < names_.size(); ++i)
                if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
            return 0;
        case MonomialOrder::Kind::block: {
            int c = grevlex_on(a, b, true);
            return c != 0 ? c : grevlex_on(a, b, false);
        }
    }
    return 0;
}

Ring VariableRing::with_order(MonomialOrder order) const { return make(names_, std::move(order)); }

Ring VariableRing::extended(const std::vector<std::string>& extra) const {
    auto names = names_;
    names.insert(names.end(), extra.begin(), extra.end());
    auto order = order_;
    return make(std::move(names), std::move(order));
}

Ring VariableRing::without(const std::set<std::string>& drop) const {
    std::vector<std::string> names;
    for (const auto& n : names_)
        if (!drop.count(n)) names.push_back(n);
    auto order = order_.kind == MonomialOrder::Kind::lex ? MonomialOrder::lex() : MonomialOrder::grevlex();
    return make(std::move(names), std::move(order));
}

std::string VariableRing::fresh_name(std::string_view stem) const {
    std::string candidate(stem);
    for (int i = 1; index_of(candidate); ++i) candidate = std::string(stem) + std::to_string(i);
    return candidate;
}

std::string VariableRing::describe() const {
    std::ostringstream os;
    os << "Q[";
    for (std::size_t i = 0; i < names_.size(); ++i) os << (i ? "," : "") << names_[i];
    os << "] " << to_string(order_);
    return os.str();
}

}  // namespace pdga
