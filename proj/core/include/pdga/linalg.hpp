#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <vector>

#include "pdga/ring.hpp"

namespace pdga {

/// Dense matrix over Q, row major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Rational>& row);

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;
    /// Basis of {v : M v = 0}, one vector per free column (1 there, 0 at other free columns).
    std::vector<std::vector<Rational>> kernel() const;

    RationalMatrix operator*(const RationalMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Incrementally maintained row-echelon basis of sparse vectors whose
/// coordinates are indexed by an ordered key type. The pivot of a row is its
/// greatest key under `Compare`.
template <class Key, class Compare = std::less<Key>>
class SparseEchelon {
public:
    using Vector = std::map<Key, Rational, Compare>;

    explicit SparseEchelon(Compare cmp = Compare()) : cmp_(cmp), pivots_(cmp) {}

    std::size_t dimension() const noexcept { return rows_.size(); }

    /// Reduces v against the current rows; zero iff v is in the span.
    Vector reduce(Vector v) const {
        for (;;) {
            if (v.empty()) return v;
            auto lead = std::prev(v.end());
            auto it = pivots_.find(lead->first);
            if (it == pivots_.end()) return v;
            const Vector& row = rows_[it->second];
            Rational factor = lead->second / row.at(lead->first);
            for (const auto& [k, c] : row) {
                auto [pos, inserted] = v.try_emplace(k, 0);
                pos->second -= factor * c;
                if (pos->second == 0) v.erase(pos);
            }
        }
    }

    bool contains(const Vector& v) const { return reduce(v).empty(); }

    /// Adds v if independent; returns whether the dimension grew.
    bool insert(const Vector& v) {
        Vector r = reduce(v);
        if (r.empty()) return false;
        auto lead = std::prev(r.end())->first;
        pivots_.emplace(lead, rows_.size());
        rows_.push_back(std::move(r));
        return true;
    }

    /// Rows brought to reduced echelon form: each pivot entry 1 and every other
    /// row zero at that pivot.
    std::vector<Vector> reduced_rows() const {
        std::vector<Vector> rows = rows_;
        std::vector<Key> leads;
        for (auto& row : rows) {
            auto lead = std::prev(row.end());
            Rational inv = 1 / lead->second;
            for (auto& [k, c] : row) c *= inv;
            leads.push_back(lead->first);
        }
        // Largest pivots first: a row only holds keys up to its own pivot, so later
        // (smaller) eliminations cannot reintroduce an eliminated pivot.
        std::vector<std::size_t> order(rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cmp_(leads[b], leads[a]); });
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            std::size_t p = order[oi];
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == p) continue;
                auto it = rows[r].find(leads[p]);
                if (it == rows[r].end()) continue;
                Rational factor = it->second;
                for (const auto& [k, c] : rows[p]) {
                    auto [pos, inserted] = rows[r].try_emplace(k, 0);
                    pos->second -= factor * c;
                    if (pos->second == 0) rows[r].erase(pos);
                }
            }
        }
        return rows;
    }

private:
    Compare cmp_;
    std::map<Key, std::size_t, Compare> pivots_;
    std::vector<Vector> rows_;
};

}  // namespace pdga
