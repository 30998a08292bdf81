#pragma once

#include "field.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orbitcert {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
public:
    using Field = F;
    using Scalar = typename F::Scalar;

    Matrix() = default;
    Matrix(const F& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    /// Integer literal constructor, mostly for tests and fixtures.
    Matrix(const F& field, std::initializer_list<std::initializer_list<long>> rows)
        : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
            for (long v : r) data_.push_back(field.from_int(v));
        }
    }

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Scalar> entries() const { return data_; }
    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    bool is_zero() const {
        for (const auto& a : data_)
            if (!F::is_zero(a)) return false;
        return true;
    }

    bool is_identity() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i == j ? !F::is_one((*this)(i, j)) : !F::is_zero((*this)(i, j))) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const Scalar& s) {
        for (auto& a : data_) a *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product " + a.shape() + " * " + b.shape());
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (F::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!F::is_zero(b(k, j))) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix pow(std::size_t e) const {
        if (!square()) throw DimensionMismatch("power of non-square matrix " + shape());
        Matrix acc = identity(field_, rows_), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    Scalar trace() const {
        Scalar t = field_.zero();
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch(std::string("matrix ") + op + " " + shape() + " vs " + o.shape());
    }

    F field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

template <ExactField F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack " + a.shape() + " | " + b.shape());
    Matrix<F> m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <ExactField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack " + a.shape() + " / " + b.shape());
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

template <ExactField F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

/// Kronecker product a ⊗ b.
template <ExactField F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (F::is_zero(a(i, j))) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

template <ExactField F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << F::format(m(i, j));
        os << ']';
    }
    return os << ']';
}

}  // namespace orbitcert
