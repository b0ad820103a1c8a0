#include "pdga/linalg.hpp"

#include "pdga/errors.hpp"

namespace pdga {

void RationalMatrix::append_row(const std::vector<Rational>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw PreconditionError("append_row: width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<std::size_t> RationalMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t sel = r;
        while (sel < rows_ && (*this)(sel, c) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != r)
            for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(sel, k), (*this)(r, k));
        Rational inv = 1 / (*this)(r, c);
        for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || (*this)(i, c) == 0) continue;
            Rational f = (*this)(i, c);
            for (std::size_t k = c; k < cols_; ++k) (*this)(i, k) -= f * (*this)(r, k);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t RationalMatrix::rank() const {
    RationalMatrix copy(*this);
    return copy.rref().size();
}

std::vector<std::vector<Rational>> RationalMatrix::kernel() const {
    RationalMatrix m(*this);
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols_);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
    if (cols_ != other.rows_) throw PreconditionError("matrix product: shape mismatch");
    RationalMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

}  // namespace pdga
