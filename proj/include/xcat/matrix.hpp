#pragma once

/**
 * @file matrix.hpp
 * @brief Dense matrices over an exact field and deterministic Gaussian elimination.
 *
 * Elimination always takes the first column with a nonzero entry at or below the
 * current row and, inside it, the first such row. No other pivoting is done, so every
 * result (rank, pivot columns, reduced form) is a deterministic function of the input.
 */

#include "xcat/fields.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xcat {

template <Field F>
class Matrix {
public:
    using element = typename F::element;

    Matrix() = default;
    Matrix(const F& f, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

    static Matrix identity(const F& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<element>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<element> data_;
};

template <Field F>
bool is_zero(const F& f, const Matrix<F>& m) {
    for (const auto& x : m.data())
        if (!f.is_zero(x)) return false;
    return true;
}

template <Field F>
Matrix<F> multiply(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix multiply: shape mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    Matrix<F> out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& x = a(i, k);
            if (f.is_zero(x)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!f.is_zero(b(k, j))) out(i, j) = f.add(out(i, j), f.mul(x, b(k, j)));
        }
    return out;
}

template <Field F>
Matrix<F> add(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix add: shape mismatch");
    Matrix<F> out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
    return out;
}

template <Field F>
Matrix<F> subtract(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix subtract: shape mismatch");
    Matrix<F> out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.sub(a(i, j), b(i, j));
    return out;
}

template <Field F>
Matrix<F> scale(const F& f, const typename F::element& s, Matrix<F> m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.mul(s, m(i, j));
    return m;
}

template <Field F>
Matrix<F> transpose(const F& f, const Matrix<F>& m) {
    Matrix<F> t(f, m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

/// Kronecker product; row index (i0, i1) maps to i0 * b.rows() + i1.
template <Field F>
Matrix<F> kronecker(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> out(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (f.is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
        }
    return out;
}

/// Copies `block` into `target` with its top-left corner at (r0, c0).
template <Field F>
void place(Matrix<F>& target, const Matrix<F>& block, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) target(r0 + i, c0 + j) = block(i, j);
}

template <Field F>
Matrix<F> submatrix(const F& f, const Matrix<F>& m, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
    Matrix<F> out(f, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = m(r0 + i, c0 + j);
    return out;
}

template <Field F>
Matrix<F> hstack(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix<F> out(f, a.rows(), a.cols() + b.cols());
    place(out, a, 0, 0);
    place(out, b, 0, a.cols());
    return out;
}

template <Field F>
Matrix<F> vstack(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Matrix<F> out(f, a.rows() + b.rows(), a.cols());
    place(out, a, 0, 0);
    place(out, b, a.rows(), 0);
    return out;
}

template <Field F>
struct RowEchelon {
    Matrix<F> reduced;                 ///< reduced row echelon form
    std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row, ascending
    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <Field F>
RowEchelon<F> row_reduce(const F& f, Matrix<F> m) {
    RowEchelon<F> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && f.is_zero(m(pivot, col))) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
        const auto inv = f.inv(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(inv, m(row, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || f.is_zero(m(i, col))) continue;
            const auto factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (!f.is_zero(m(row, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

template <Field F>
std::size_t rank(const F& f, const Matrix<F>& m) {
    if (m.empty()) return 0;
    return row_reduce(f, m).rank();
}

/**
 * Column-space factorization G = E * F_coords.
 *
 * E consists of the pivot columns of G themselves (unreduced) and F_coords holds the
 * coordinates of every column of G in that basis, so column pivots[i] of F_coords is the
 * i-th unit vector. The identity E * F_coords = G holds exactly.
 */
template <Field F>
struct ImageFactorization {
    Matrix<F> inclusion;             ///< total x rank
    Matrix<F> corestriction;         ///< rank x total
    std::vector<std::size_t> pivots; ///< pivot columns of G, ascending
};

template <Field F>
ImageFactorization<F> factor_image(const F& f, const Matrix<F>& g) {
    ImageFactorization<F> out;
    const RowEchelon<F> ech = row_reduce(f, g);
    const std::size_t r = ech.rank();
    out.pivots = ech.pivots;
    out.inclusion = Matrix<F>(f, g.rows(), r);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t k = 0; k < r; ++k) out.inclusion(i, k) = g(i, ech.pivots[k]);
    out.corestriction = submatrix(f, ech.reduced, 0, r, 0, g.cols());
    return out;
}

}  // namespace xcat
