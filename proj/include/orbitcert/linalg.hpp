#pragma once

// Exact Gaussian elimination and the handful of derived operations the rest of
// the library is written against. Pivoting always takes the first nonzero
// entry in column order, so every result is deterministic.

#include "matrix.hpp"

#include <optional>
#include <vector>

namespace orbitcert {

template <ExactField F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Only the first `pivot_limit` columns are eligible
/// as pivots; the remaining columns are carried along (augmented systems).
template <ExactField F>
Echelon<F> rref(Matrix<F> m, std::size_t pivot_limit) {
    using S = typename F::Scalar;
    const std::size_t rows = m.rows(), cols = m.cols();
    pivot_limit = std::min(pivot_limit, cols);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!F::is_zero(m(i, c))) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(sel, j), m(r, j));
        if (!F::is_one(m(r, c))) {
            const S inv = F::inv(m(r, c));
            for (std::size_t j = c; j < cols; ++j)
                if (!F::is_zero(m(r, j))) m(r, j) *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || F::is_zero(m(i, c))) continue;
            const S factor = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!F::is_zero(m(r, j))) m(i, j) -= factor * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

template <ExactField F>
Echelon<F> rref(Matrix<F> m) {
    const std::size_t cols = m.cols();
    return rref(std::move(m), cols);
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
    if (m.empty()) return 0;
    return rref(m).pivots.size();
}

/// Canonical kernel basis packed as the columns of a (cols x k) matrix: one
/// vector per free column j, with a 1 in position j and zeros at the other
/// free positions.
template <ExactField F>
Matrix<F> kernel_matrix(const Matrix<F>& m) {
    const std::size_t n = m.cols();
    auto ech = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free.push_back(j);
    Matrix<F> basis(m.field(), n, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        const std::size_t j = free[k];
        basis(j, k) = m.field().one();
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            if (!F::is_zero(ech.reduced(i, j))) basis(ech.pivots[i], k) = -ech.reduced(i, j);
    }
    return basis;
}

/// Kernel basis as a list of column vectors (see `kernel_matrix`).
template <ExactField F>
std::vector<Matrix<F>> nullspace(const Matrix<F>& m) {
    const Matrix<F> k = kernel_matrix(m);
    std::vector<Matrix<F>> out;
    out.reserve(k.cols());
    for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(k.column(j));
    return out;
}

/// Some X with A X = B, free variables set to zero; nullopt if inconsistent.
template <ExactField F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows())
        throw DimensionMismatch("solve: A is " + a.shape() + " but B is " + b.shape());
    const std::size_t n = a.cols(), k = b.cols();
    auto ech = rref(hstack(a, b), n);
    const std::size_t r = ech.pivots.size();
    for (std::size_t i = r; i < a.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!F::is_zero(ech.reduced(i, n + j))) return std::nullopt;
    Matrix<F> x(a.field(), n, k);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < k; ++j) x(ech.pivots[i], j) = ech.reduced(i, n + j);
    return x;
}

template <ExactField F>
bool is_invertible(const Matrix<F>& m) {
    return m.square() && rank(m) == m.rows();
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    if (!m.square()) throw DimensionMismatch("inverse of non-square " + m.shape());
    if (m.rows() == 0) return m;
    auto ech = rref(hstack(m, Matrix<F>::identity(m.field(), m.rows())), m.rows());
    if (ech.pivots.size() != m.rows()) return std::nullopt;
    return ech.reduced.block(0, m.rows(), m.rows(), m.rows());
}

/// Columns of `m` at the pivot positions: a basis of the column space.
template <ExactField F>
Matrix<F> column_space(const Matrix<F>& m) {
    auto ech = rref(m);
    Matrix<F> out(m.field(), m.rows(), ech.pivots.size());
    for (std::size_t k = 0; k < ech.pivots.size(); ++k)
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, k) = m(i, ech.pivots[k]);
    return out;
}

/// Standard basis vectors C such that [B | C] is invertible. B must have
/// independent columns.
template <ExactField F>
Matrix<F> complete_basis(const Matrix<F>& b) {
    const std::size_t d = b.rows();
    auto ech = rref(hstack(b, Matrix<F>::identity(b.field(), d)));
    if (ech.pivots.size() != d || (b.cols() && ech.pivots[b.cols() - 1] != b.cols() - 1))
        throw Error("complete_basis: columns are not independent");
    Matrix<F> c(b.field(), d, d - b.cols());
    for (std::size_t k = b.cols(); k < d; ++k) c(ech.pivots[k] - b.cols(), k - b.cols()) = b.field().one();
    return c;
}

/// Smallest subspace containing the columns of `seed` and stable under every
/// matrix in `actions`, returned as a column-space basis.
template <ExactField F>
Matrix<F> invariant_closure(const std::vector<Matrix<F>>& actions, const Matrix<F>& seed) {
    Matrix<F> span = column_space(seed);
    for (;;) {
        Matrix<F> grown = span;
        for (const auto& a : actions) grown = hstack(grown, a * span);
        Matrix<F> next = column_space(grown);
        if (next.cols() == span.cols()) return span;
        span = std::move(next);
    }
}

/// True iff every column of `v` lies in the column space of `basis`.
template <ExactField F>
bool in_span(const Matrix<F>& basis, const Matrix<F>& v) {
    if (basis.cols() == 0) return v.is_zero();
    return solve(basis, v).has_value();
}

/// Nilpotency test: m^n == 0 for an n x n matrix.
template <ExactField F>
bool is_nilpotent(const Matrix<F>& m) {
    if (!m.square()) throw DimensionMismatch("nilpotency of non-square " + m.shape());
    return m.rows() == 0 || m.pow(m.rows()).is_zero();
}

/// Row-major flattening into a column vector.
template <ExactField F>
Matrix<F> vectorize(const Matrix<F>& m) {
    Matrix<F> v(m.field(), m.rows() * m.cols(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
    return v;
}

template <ExactField F>
Matrix<F> unvectorize(const Matrix<F>& v, std::size_t rows, std::size_t cols, std::size_t column = 0) {
    Matrix<F> m(v.field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v(i * cols + j, column);
    return m;
}

}  // namespace orbitcert
