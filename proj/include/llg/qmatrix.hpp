#pragma once

#include <cassert>
#include <vector>

#include "rational.hpp"

namespace llg {

/// Dense matrix over exact rationals. Everything here is exact; no floating
/// point enters rank or kernel computations.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const Rat& at(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const QMatrix& x, const QMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    QMatrix mul(const QMatrix& rhs) const {
        assert(cols_ == rhs.rows_);
        QMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& v = at(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
            }
        return out;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        assert(v.size() == cols_);
        std::vector<Rat> out(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) out[i] += at(i, j) * v[j];
        return out;
    }

    /// Reduced row echelon form (in place). Returns pivot column indices.
    /// Pivot choice is the first nonzero entry in column order, so the result
    /// is deterministic.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && at(sel, col) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
            Rat inv = 1 / at(row, col);
            for (std::size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col) == 0) continue;
                Rat f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        QMatrix tmp = *this;
        return tmp.rref().size();
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    std::vector<std::vector<Rat>> kernel_basis() const {
        QMatrix tmp = *this;
        std::vector<std::size_t> pivots = tmp.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Rat>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -tmp.at(i, f);
            basis.push_back(std::move(v));
        }
        return basis;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// A finite cochain complex: space_dims[k] = dim C^k and maps[k] the matrix
/// of d_k : C^k -> C^{k+1} (rows = dim C^{k+1}, cols = dim C^k).
struct Complex {
    std::vector<std::size_t> space_dims;
    std::vector<QMatrix> maps;
};

/// Verifies shapes and d.d = 0 exactly, then returns the cohomology
/// dimensions dim H^k = (dim C^k - rank d_k) - rank d_{k-1}.
inline std::vector<std::size_t> cohomology_dims(const Complex& cx) {
    const auto& dims = cx.space_dims;
    const auto& d = cx.maps;
    if (d.size() + 1 != dims.size()) throw EvalError("complex has wrong number of maps");
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k].cols() != dims[k] || d[k].rows() != dims[k + 1])
            throw EvalError("differential " + std::to_string(k) + " has wrong shape");
        if (k + 1 < d.size() && !d[k + 1].mul(d[k]).is_zero())
            throw EvalError("d.d != 0 between degrees " + std::to_string(k) + " and " + std::to_string(k + 2));
    }
    std::vector<std::size_t> betti(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::size_t rank_out = k < d.size() ? d[k].rank() : 0;
        std::size_t rank_in = k > 0 ? d[k - 1].rank() : 0;
        betti[k] = dims[k] - rank_out - rank_in;
    }
    return betti;
}

}  // namespace llg
