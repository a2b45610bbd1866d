#pragma once

// Deterministic exact linear algebra over Q. Canonical bases are read off
// reduced row echelon form with pivot columns in ascending order, so every
// downstream computation is reproducible bit for bit.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dgdef/rational.hpp"

namespace dgdef {

using Vec = std::vector<Rat>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Vec& axpy(Vec& y, const Rat& a, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
    return y;
}

class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static RatMatrix from_columns(std::size_t rows, const std::vector<Vec>& cols) {
        RatMatrix m(rows, cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != rows) throw std::invalid_argument("from_columns: ragged column");
            for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) {
        check(r, c);
        return data_[r * cols_ + c];
    }
    const Rat& at(std::size_t r, std::size_t c) const {
        check(r, c);
        return data_[r * cols_ + c];
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        RatMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
            }
        return out;
    }

    RatMatrix operator+(const RatMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum: dimension mismatch");
        RatMatrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
        return out;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix difference: dimension mismatch");
        RatMatrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
        return out;
    }

    RatMatrix scaled(const Rat& a) const {
        RatMatrix out = *this;
        for (auto& x : out.data_) x *= a;
        return out;
    }

    Vec apply(const Vec& v) const {
        if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
        Vec out = zero_vec(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) out[i] += at(i, j) * v[j];
        return out;
    }

    RatMatrix transpose() const {
        RatMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    RatMatrix hstack(const RatMatrix& o) const {
        if (rows_ != o.rows_) throw std::invalid_argument("hstack: row mismatch");
        RatMatrix out(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
        }
        return out;
    }

    Vec column(std::size_t c) const {
        Vec v = zero_vec(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }

    // In-place Gauss-Jordan. Returns pivot columns in ascending order.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && at(sel, col) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
            Rat inv = Rat(1) / at(row, col);
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
        RatMatrix m = *this;
        return m.rref().size();
    }

  private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("RatMatrix index out of bounds");
    }

    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

// Canonical kernel basis: one vector per free column (ascending), unit entry
// in the free column, pivot entries filled from the reduced echelon form.
inline std::vector<Vec> kernel_basis(const RatMatrix& m) {
    RatMatrix r = m;
    std::vector<std::size_t> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v = zero_vec(m.cols());
        v[c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Canonical particular solution of m x = b (free variables zero), or nullopt
// when inconsistent. Dimension mismatch is a usage error, not "no solution".
inline std::optional<Vec> solve(const RatMatrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length != rows");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x = zero_vec(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
    return x;
}

// Solve m X = B columnwise; nullopt if any column is inconsistent.
inline std::optional<RatMatrix> solve_matrix(const RatMatrix& m, const RatMatrix& B) {
    RatMatrix X(m.cols(), B.cols());
    for (std::size_t c = 0; c < B.cols(); ++c) {
        auto x = solve(m, B.column(c));
        if (!x) return std::nullopt;
        for (std::size_t r = 0; r < m.cols(); ++r) X.at(r, c) = (*x)[r];
    }
    return X;
}

inline bool in_column_space(const RatMatrix& m, const Vec& b) { return solve(m, b).has_value(); }

struct Subquotient {
    std::size_t dim = 0;
    std::vector<Vec> representatives;  // kernel vectors completing im(d_in)
};

// H = ker(d_out) / im(d_in). Requires d_out * d_in = 0.
inline Subquotient subquotient(const RatMatrix& d_in, const RatMatrix& d_out) {
    if (d_in.cols() > 0 && !(d_out * d_in).is_zero())
        throw std::invalid_argument("subquotient: maps do not compose to zero");
    std::vector<Vec> ker = kernel_basis(d_out);
    Subquotient out;
    // Greedily keep kernel vectors that raise the rank of [im(d_in) | chosen].
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < d_in.cols(); ++c) cols.push_back(d_in.column(c));
    std::size_t base_rank = RatMatrix::from_columns(d_out.cols(), cols).rank();
    for (auto& v : ker) {
        cols.push_back(v);
        std::size_t r = RatMatrix::from_columns(d_out.cols(), cols).rank();
        if (r > base_rank) {
            base_rank = r;
            out.representatives.push_back(v);
        } else {
            cols.pop_back();
        }
    }
    out.dim = out.representatives.size();
    return out;
}

}  // namespace dgdef
